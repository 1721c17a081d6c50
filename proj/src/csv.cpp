#include "radarlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radarlab {

namespace {

std::vector<double> time_column(double start, double rate, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = start + static_cast<double>(k) / rate;
    return t;
}

void expect_columns(const CsvTable& table,
                    const std::vector<std::string>& names,
                    const std::string& what) {
    if (table.columns != names) {
        std::string want;
        for (const auto& n : names) want += (want.empty() ? "" : ",") + n;
        throw std::runtime_error(what + " CSV must have columns " + want);
    }
}

/// Sample rate from a uniformly spaced time column.
double infer_rate(const std::vector<double>& t, const std::string& what) {
    if (t.size() < 2)
        throw std::runtime_error(what + " CSV needs at least 2 rows");
    const double dt =
        (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(dt > 0.0))
        throw std::runtime_error(what + " CSV time column must increase");
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double expected = t.front() + static_cast<double>(k) * dt;
        if (std::abs(t[k] - expected) > 1e-6 * dt)
            throw std::runtime_error(what + " CSV is not uniformly sampled");
    }
    return 1.0 / dt;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    if (table.columns.empty())
        throw std::runtime_error("CSV table has no columns");
    for (const auto& col : table.data)
        if (col.size() != table.rows())
            throw std::runtime_error("CSV columns have unequal lengths");

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());

    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.data.size(); ++c)
            out << (c ? "," : "") << format_double(table.data[c][r]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());

    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty CSV file: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::stringstream header(line);
        std::string name;
        while (std::getline(header, name, ',')) table.columns.push_back(name);
    }
    if (table.columns.empty())
        throw std::runtime_error("CSV header has no columns: " + path.string());
    table.data.resize(table.columns.size());

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream cells(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            if (col >= table.columns.size())
                throw std::runtime_error("row " + std::to_string(row + 1) +
                                         " has too many cells: " +
                                         path.string());
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw std::runtime_error("non-numeric cell '" + cell +
                                         "' in row " + std::to_string(row + 1) +
                                         ": " + path.string());
            table.data[col].push_back(value);
            ++col;
        }
        if (col != table.columns.size())
            throw std::runtime_error("row " + std::to_string(row + 1) +
                                     " has too few cells: " + path.string());
        ++row;
    }
    return table;
}

CsvTable iq_table(const IQRecord& rec) {
    CsvTable table;
    table.columns = {"t", "i", "q"};
    table.data = {time_column(rec.start_time, rec.sample_rate,
                              rec.i_samples.size()),
                  rec.i_samples, rec.q_samples};
    return table;
}

CsvTable motion_table(const MotionTrace& trace) {
    CsvTable table;
    table.columns = {"t", "x_m"};
    table.data = {time_column(trace.start_time, trace.sample_rate,
                              trace.displacements.size()),
                  trace.displacements};
    return table;
}

CsvTable displacement_table(const DisplacementEstimate& est) {
    CsvTable table;
    table.columns = {"t", "x_m"};
    table.data = {time_column(0.0, est.sample_rate, est.displacements.size()),
                  est.displacements};
    return table;
}

CsvTable if_table(const IfRecord& rec) {
    CsvTable table;
    table.columns = {"t", "s"};
    table.data = {time_column(0.0, rec.sample_rate, rec.samples.size()),
                  rec.samples};
    return table;
}

CsvTable spectrum_table(const SpectrumReport& rep) {
    CsvTable table;
    table.columns = {"freq_hz", "amplitude_m"};
    table.data = {rep.bin_freqs, rep.amplitude};
    return table;
}

IQRecord to_iq_record(const CsvTable& table) {
    expect_columns(table, {"t", "i", "q"}, "I/Q");
    if (table.rows() == 0) throw std::runtime_error("empty record");
    IQRecord rec;
    rec.sample_rate = infer_rate(table.data[0], "I/Q");
    rec.start_time = table.data[0].front();
    rec.i_samples = table.data[1];
    rec.q_samples = table.data[2];
    return rec;
}

DisplacementEstimate to_displacement(const CsvTable& table) {
    expect_columns(table, {"t", "x_m"}, "displacement");
    if (table.rows() == 0) throw std::runtime_error("empty record");
    DisplacementEstimate est;
    est.sample_rate = infer_rate(table.data[0], "displacement");
    est.displacements = table.data[1];
    return est;
}

MotionTrace to_motion_trace(const CsvTable& table) {
    expect_columns(table, {"t", "x_m"}, "motion");
    if (table.rows() == 0) throw std::runtime_error("empty record");
    MotionTrace trace;
    trace.sample_rate = infer_rate(table.data[0], "motion");
    trace.start_time = table.data[0].front();
    trace.displacements = table.data[1];
    return trace;
}

}  // namespace radarlab
