#include "efnz/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace efnz {

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), columns_(header.size()) {
    if (header.empty()) throw ConfigError("csv writer needs a non-empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; an explicit close() surfaces errors
    }
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::write_row(const std::vector<CsvCell>& cells) {
    if (cells.size() != columns_) {
        throw ConfigError("csv row has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(columns_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        if (const auto* n = std::get_if<long long>(&cells[i])) {
            buffer_ += std::to_string(*n);
        } else if (const auto* d = std::get_if<double>(&cells[i])) {
            buffer_ += format_double(*d);
        } else {
            buffer_ += std::get<std::string>(cells[i]);
        }
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    closed_ = true;
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path_.string() + "' for writing");
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw ConfigError("failed writing '" + path_.string() + "'");
}

void save_tensor_csv(const Tensor& t, const std::filesystem::path& path) {
    if (t.shape().size() > 2) {
        throw ConfigError("tensor CSVs support rank 1 and 2, got " +
                          shape_to_string(t.shape()));
    }
    std::size_t cols = t.shape().back();
    std::size_t rows = t.size() / cols;
    std::vector<std::string> header(cols);
    for (std::size_t c = 0; c < cols; ++c) header[c] = "c" + std::to_string(c);
    CsvWriter w(path, header);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<CsvCell> cells;
        cells.reserve(cols);
        for (std::size_t c = 0; c < cols; ++c) cells.emplace_back(t[r * cols + c]);
        w.write_row(cells);
    }
    w.close();
}

Tensor load_tensor_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open tensor csv '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("tensor csv is empty: " + path.string());
    std::vector<double> values;
    std::size_t cols = 0, rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t row_cols = 0;
        while (std::getline(ss, cell, ',')) {
            values.push_back(std::stod(cell));
            ++row_cols;
        }
        if (cols == 0) cols = row_cols;
        if (row_cols != cols) throw ConfigError("ragged tensor csv: " + path.string());
        ++rows;
    }
    if (rows == 0 || cols == 0) throw ConfigError("tensor csv has no data: " + path.string());
    if (rows == 1) return Tensor::from_values({cols}, std::move(values));
    return Tensor::from_values({rows, cols}, std::move(values));
}

}  // namespace efnz
