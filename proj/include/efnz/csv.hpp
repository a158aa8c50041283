#ifndef EFNZ_CSV_HPP
#define EFNZ_CSV_HPP

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "efnz/tensor.hpp"

namespace efnz {

using CsvCell = std::variant<long long, double, std::string>;

/// Comma-separated writer with a header row. Doubles are printed with 17
/// significant digits so re-runs produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);
    ~CsvWriter();

    void write_row(const std::vector<CsvCell>& cells);
    void close();

    static std::string format_double(double v);

private:
    std::string buffer_;
    std::filesystem::path path_;
    std::size_t columns_ = 0;
    bool closed_ = false;
};

/// Tensor as a CSV grid: header c0..c{W-1}, one row per leading index.
/// Rank 1 writes a single data row.
void save_tensor_csv(const Tensor& t, const std::filesystem::path& path);

/// Reads a tensor CSV back; one row gives rank 1, several give rank 2.
Tensor load_tensor_csv(const std::filesystem::path& path);

}  // namespace efnz

#endif  // EFNZ_CSV_HPP
