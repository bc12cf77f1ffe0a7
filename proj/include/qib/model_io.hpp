#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qib/channel.hpp"
#include "qib/covariant.hpp"
#include "qib/estimation.hpp"
#include "qib/types.hpp"

namespace qib {

// Plain container mirroring the sections of a model file.  Domain
// validation happens when the typed objects are built from it.
struct RawModel {
    // #channel
    std::vector<std::string> channel_labels;
    std::vector<ComplexMatrix> channel_outputs;
    // #family
    std::vector<double> theta;
    std::optional<ComplexMatrix> family_rho;
    std::vector<ComplexMatrix> family_derivs;
    // #group
    std::size_t group_order = 0;
    std::vector<std::size_t> mult_table;
    std::vector<ComplexMatrix> unitaries;
    std::size_t orbit_size = 0;
    std::size_t theta0 = 0;
    std::vector<std::size_t> action;
    std::vector<ComplexMatrix> orbit_states;
    // #error
    std::vector<double> error;
    // #weight
    std::optional<ComplexMatrix> weight;

    bool has_channel() const { return !channel_outputs.empty(); }
    bool has_family() const { return family_rho.has_value(); }
    bool has_group() const { return group_order > 0; }
    bool has_error() const { return !error.empty(); }
};

// Parse a model file.  Lines starting with '#' are section headers when the
// first token is a known section name, comments otherwise; an inline '#'
// starts a comment.  Throws ParseError with a 1-based line number.
RawModel parse_model(std::istream& in);
RawModel parse_model_file(const std::string& path);

// Serialize with 17 significant digits; parse(serialize(m)) reproduces
// every number exactly.
std::string serialize_model(const RawModel& m);
void write_model_file(const std::string& path, const RawModel& m);

// Typed builders; each requires its section to be present.
CqChannel build_channel(const RawModel& m);
StateFamily build_family(const RawModel& m);
CovariantModel build_covariant(const RawModel& m);

}  // namespace qib
