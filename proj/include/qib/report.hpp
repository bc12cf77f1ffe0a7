#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qib {

// One reported quantity with its certificate.  `gap` is always present in
// the output: it is the certified distance to the exact value (zero for
// closed forms).
struct Report {
    std::string quantity;
    double value = 0.0;
    std::string units;  // "nats", "bits", or "" for unit-free quantities
    double gap = 0.0;
    std::optional<double> oracle_value;
    std::vector<std::pair<std::string, double>> extra;
};

// Entropic quantities are computed in nats; this converts a report in
// place (value, gap, oracle) when bits are requested and the report is
// unit-bearing.
void convert_units(Report& r, const std::string& units);

std::string to_text(const std::vector<Report>& reports);
std::string to_json(const std::vector<Report>& reports);

}  // namespace qib
