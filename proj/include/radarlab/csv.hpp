#ifndef RADARLAB_CSV_HPP
#define RADARLAB_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "radarlab/analysis.hpp"
#include "radarlab/demod.hpp"
#include "radarlab/digital_if.hpp"
#include "radarlab/motion.hpp"
#include "radarlab/radar_model.hpp"

namespace radarlab {

/// Rectangular numeric CSV: a header row of column names, then one row per
/// sample. Values are written with %.17g so doubles round-trip exactly, UTF-8
/// with LF line endings; a table that is read and re-serialised is
/// byte-identical.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  ///< column-major, equal lengths

    std::size_t rows() const { return data.empty() ? 0 : data[0].size(); }
};

/// %.17g, the shortest fixed precision that round-trips any double.
std::string format_double(double value);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Typed table builders. The time column is t = start_time + n / sample_rate.
CsvTable iq_table(const IQRecord& rec);                    // t,i,q
CsvTable motion_table(const MotionTrace& trace);           // t,x_m
CsvTable displacement_table(const DisplacementEstimate&);  // t,x_m
CsvTable if_table(const IfRecord& rec);                    // t,s
CsvTable spectrum_table(const SpectrumReport& rep);        // freq_hz,amplitude_m

// Typed readers. Sample rates are inferred from the time column; records
// must be uniformly sampled.
IQRecord to_iq_record(const CsvTable& table);
DisplacementEstimate to_displacement(const CsvTable& table);
MotionTrace to_motion_trace(const CsvTable& table);

}  // namespace radarlab

#endif  // RADARLAB_CSV_HPP
