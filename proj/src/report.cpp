#include "qib/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qib {

void convert_units(Report& r, const std::string& units) {
    if (units != "bits" || r.units != "nats") return;
    const double log2 = std::log(2.0);
    r.value /= log2;
    r.gap /= log2;
    if (r.oracle_value) *r.oracle_value /= log2;
    r.units = "bits";
}

namespace {
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace

std::string to_text(const std::vector<Report>& reports) {
    std::ostringstream out;
    for (const Report& r : reports) {
        out << r.quantity << " = " << num(r.value);
        if (!r.units.empty()) out << " " << r.units;
        out << "  (gap " << num(r.gap) << ")";
        if (r.oracle_value) out << "  [oracle " << num(*r.oracle_value) << "]";
        out << "\n";
        for (const auto& [name, v] : r.extra)
            out << "  " << name << " = " << num(v) << "\n";
    }
    return out.str();
}

std::string to_json(const std::vector<Report>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Report& r : reports) {
        nlohmann::json obj;
        obj["quantity"] = r.quantity;
        obj["value"] = r.value;
        obj["units"] = r.units;
        obj["gap"] = r.gap;
        if (r.oracle_value) obj["oracle_value"] = *r.oracle_value;
        for (const auto& [name, v] : r.extra) obj[name] = v;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace qib
