#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qib/errors.hpp"
#include "qib/examples.hpp"
#include "qib/model_io.hpp"
#include "qib/types.hpp"

using namespace qib;

namespace {

RawModel reparse(const RawModel& m) {
    std::istringstream in(serialize_model(m));
    return parse_model(in);
}

double worst_matrix_dev(const std::vector<ComplexMatrix>& a,
                        const std::vector<ComplexMatrix>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, (a[i] - b[i]).max_abs());
    return worst;
}

}  // namespace

TEST_CASE("round trips reproduce every number exactly") {
    const RawModel channel =
        examples::raw_channel(examples::pure_pair(M_PI / 4.0));
    const RawModel family = [] {
        RawModel f = examples::raw_family(examples::full_qubit(0.5));
        f.weight = ComplexMatrix::identity(3);
        return f;
    }();
    const RawModel group =
        examples::raw_covariant(examples::phase_orbit(8));

    for (const RawModel* m : {&channel, &family, &group}) {
        const RawModel back = reparse(*m);
        CHECK(serialize_model(back) == serialize_model(*m));
        CHECK(worst_matrix_dev(back.channel_outputs, m->channel_outputs) ==
              0.0);
        CHECK(worst_matrix_dev(back.family_derivs, m->family_derivs) == 0.0);
        CHECK(worst_matrix_dev(back.unitaries, m->unitaries) == 0.0);
        CHECK(worst_matrix_dev(back.orbit_states, m->orbit_states) == 0.0);
        CHECK(back.error == m->error);
        CHECK(back.theta == m->theta);
        CHECK(back.mult_table == m->mult_table);
        CHECK(back.action == m->action);
    }

    // And the typed builders accept the reparsed forms.
    CHECK_NOTHROW(build_channel(reparse(channel)));
    CHECK_NOTHROW(build_family(reparse(family)));
    CHECK_NOTHROW(build_covariant(reparse(group)));
}

TEST_CASE("comments and blank lines are ignored") {
    const std::string text =
        "# a leading comment line\n"
        "\n"
        "#channel\n"
        "x y   # letter names\n"
        "2\n"
        "1+0j 0+0j   # first row\n"
        "0+0j 0+0j\n"
        "2\n"
        "0+0j 0+0j\n"
        "0+0j 1+0j\n";
    std::istringstream in(text);
    const RawModel m = parse_model(in);
    REQUIRE(m.channel_labels.size() == 2);
    CHECK(m.channel_labels[1] == "y");
    CHECK(m.channel_outputs[1](1, 1) == cplx(1, 0));
    CHECK_NOTHROW(build_channel(m));
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            parse_model(in);
        } catch (const ParseError& e) {
            return e.line;
        }
        return 0;
    };

    // Bad complex token on the fifth line.
    CHECK(line_of("#channel\n"
                  "x y\n"
                  "2\n"
                  "1+0j 0+0j\n"
                  "0+0j nonsense\n"
                  "2\n"
                  "1+0j 0+0j\n"
                  "0+0j 0+0j\n") == 5);
    // Wrong entry count in a matrix row.
    CHECK(line_of("#family\n"
                  "0.5\n"
                  "2\n"
                  "1+0j\n") == 4);
    // Content before any section.
    CHECK(line_of("3 4 5\n#channel\n") == 1);
    // Duplicated section.
    CHECK(line_of("#weight\n1\n1+0j\n#weight\n1\n1+0j\n") == 4);
    // #error needs a group first.
    CHECK(line_of("#error\n0\n") == 1);
    // Weights must be real.
    CHECK(line_of("#weight\n1\n1+2j\n") == 3);
}

TEST_CASE("missing files and missing sections") {
    CHECK_THROWS_AS(parse_model_file("/no/such/file.model"), ParseError);
    const RawModel empty;
    CHECK_THROWS_AS(build_channel(empty), Error);
    CHECK_THROWS_AS(build_family(empty), Error);
    CHECK_THROWS_AS(build_covariant(empty), Error);
}

TEST_CASE("serializer emits parseable weight sections") {
    RawModel m = examples::raw_family(examples::diagonal_qubit(0.25));
    ComplexMatrix w(1, 1);
    w(0, 0) = 2.5;
    m.weight = w;
    const RawModel back = reparse(m);
    REQUIRE(back.weight.has_value());
    CHECK((*back.weight)(0, 0) == cplx(2.5, 0));
}
