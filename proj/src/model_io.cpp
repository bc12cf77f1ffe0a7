#include "qib/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qib {

namespace {

struct Line {
    std::string text;       // comment-stripped, trimmed
    std::size_t number = 0; // 1-based
};

std::vector<Line> load_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        std::string text = raw;
        // Section headers keep their leading '#'; anything after an inline
        // '#' is a comment.
        std::size_t start = text.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (text[start] != '#') {
            const std::size_t hash = text.find('#');
            if (hash != std::string::npos) text.erase(hash);
        }
        const std::size_t a = text.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const std::size_t b = text.find_last_not_of(" \t\r");
        lines.push_back({text.substr(a, b - a + 1), n});
    }
    return lines;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool is_section(const std::string& line) {
    if (line.empty() || line[0] != '#') return false;
    const std::string head = split_tokens(line).front();
    return head == "#channel" || head == "#family" || head == "#group" ||
           head == "#error" || head == "#weight";
}

struct Cursor {
    const std::vector<Line>& lines;
    std::size_t pos = 0;

    bool done() const { return pos >= lines.size(); }
    const Line& peek() const { return lines[pos]; }
    const Line& take() { return lines[pos++]; }
    std::size_t here() const {
        return done() ? (lines.empty() ? 0 : lines.back().number + 1)
                      : lines[pos].number;
    }
    const Line& expect(const char* what) {
        if (done())
            throw ParseError(here(), std::string("expected ") + what +
                                         " before end of file");
        if (is_section(peek().text))
            throw ParseError(peek().number, std::string("expected ") + what +
                                                " before next section");
        return take();
    }
};

cplx parse_complex_token(const std::string& tok, std::size_t line) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const double re = std::strtod(s, &end);
    if (end == s)
        throw ParseError(line, "bad complex token '" + tok + "'");
    if (*end != '+' && *end != '-')
        throw ParseError(line, "complex token '" + tok +
                                   "' is missing its imaginary part");
    const char* s2 = end;
    const double im = std::strtod(s2, &end);
    if (end == s2 || *end != 'j' || *(end + 1) != '\0')
        throw ParseError(line, "bad complex token '" + tok + "'");
    return cplx(re, im);
}

double parse_real_token(const std::string& tok, std::size_t line) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ParseError(line, "bad number '" + tok + "'");
    return v;
}

std::size_t parse_index_token(const std::string& tok, std::size_t line) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end == s || *end != '\0')
        throw ParseError(line, "bad index '" + tok + "'");
    return static_cast<std::size_t>(v);
}

ComplexMatrix parse_matrix_block(Cursor& cur) {
    const Line& head = cur.expect("a matrix dimension line");
    const std::vector<std::string> toks = split_tokens(head.text);
    if (toks.size() != 1)
        throw ParseError(head.number, "expected a single matrix dimension");
    const std::size_t dim = parse_index_token(toks[0], head.number);
    if (dim == 0) throw ParseError(head.number, "matrix dimension is zero");
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const Line& row = cur.expect("a matrix row");
        const std::vector<std::string> entries = split_tokens(row.text);
        if (entries.size() != dim)
            throw ParseError(row.number,
                             "expected " + std::to_string(dim) + " entries, found " +
                                 std::to_string(entries.size()));
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = parse_complex_token(entries[j], row.number);
    }
    return m;
}

void parse_channel(Cursor& cur, RawModel& m, std::size_t section_line) {
    if (m.has_channel())
        throw ParseError(section_line, "duplicate #channel section");
    const Line& labels = cur.expect("the alphabet labels");
    m.channel_labels = split_tokens(labels.text);
    for (std::size_t x = 0; x < m.channel_labels.size(); ++x)
        m.channel_outputs.push_back(parse_matrix_block(cur));
}

void parse_family(Cursor& cur, RawModel& m, std::size_t section_line) {
    if (m.has_family())
        throw ParseError(section_line, "duplicate #family section");
    const Line& theta_line = cur.expect("the parameter values");
    for (const std::string& tok : split_tokens(theta_line.text))
        m.theta.push_back(parse_real_token(tok, theta_line.number));
    if (m.theta.empty())
        throw ParseError(theta_line.number, "no parameters given");
    m.family_rho = parse_matrix_block(cur);
    for (std::size_t k = 0; k < m.theta.size(); ++k)
        m.family_derivs.push_back(parse_matrix_block(cur));
}

void parse_group(Cursor& cur, RawModel& m, std::size_t section_line) {
    if (m.has_group())
        throw ParseError(section_line, "duplicate #group section");
    const Line& order_line = cur.expect("the group order");
    const std::vector<std::string> order_toks = split_tokens(order_line.text);
    if (order_toks.size() != 1)
        throw ParseError(order_line.number, "expected the group order alone");
    m.group_order = parse_index_token(order_toks[0], order_line.number);
    if (m.group_order == 0)
        throw ParseError(order_line.number, "group order is zero");

    for (std::size_t g = 0; g < m.group_order; ++g) {
        const Line& row = cur.expect("a multiplication table row");
        const std::vector<std::string> toks = split_tokens(row.text);
        if (toks.size() != m.group_order)
            throw ParseError(row.number, "multiplication row needs " +
                                             std::to_string(m.group_order) +
                                             " entries");
        for (const std::string& tok : toks)
            m.mult_table.push_back(parse_index_token(tok, row.number));
    }
    for (std::size_t g = 0; g < m.group_order; ++g)
        m.unitaries.push_back(parse_matrix_block(cur));

    const Line& orbit_line = cur.expect("the orbit size and reference index");
    const std::vector<std::string> toks = split_tokens(orbit_line.text);
    if (toks.size() != 2)
        throw ParseError(orbit_line.number,
                         "expected '<orbit size> <reference index>'");
    m.orbit_size = parse_index_token(toks[0], orbit_line.number);
    m.theta0 = parse_index_token(toks[1], orbit_line.number);
    if (m.orbit_size == 0)
        throw ParseError(orbit_line.number, "orbit is empty");

    for (std::size_t g = 0; g < m.group_order; ++g) {
        const Line& row = cur.expect("an action table row");
        const std::vector<std::string> atoks = split_tokens(row.text);
        if (atoks.size() != m.orbit_size)
            throw ParseError(row.number, "action row needs " +
                                             std::to_string(m.orbit_size) +
                                             " entries");
        for (const std::string& tok : atoks)
            m.action.push_back(parse_index_token(tok, row.number));
    }
    for (std::size_t j = 0; j < m.orbit_size; ++j)
        m.orbit_states.push_back(parse_matrix_block(cur));
}

void parse_error_section(Cursor& cur, RawModel& m, std::size_t section_line) {
    if (m.has_error())
        throw ParseError(section_line, "duplicate #error section");
    if (!m.has_group())
        throw ParseError(section_line,
                         "#error requires a preceding #group section");
    for (std::size_t i = 0; i < m.orbit_size; ++i) {
        const Line& row = cur.expect("an error table row");
        const std::vector<std::string> toks = split_tokens(row.text);
        if (toks.size() != m.orbit_size)
            throw ParseError(row.number, "error row needs " +
                                             std::to_string(m.orbit_size) +
                                             " entries");
        for (const std::string& tok : toks)
            m.error.push_back(parse_real_token(tok, row.number));
    }
}

void parse_weight(Cursor& cur, RawModel& m, std::size_t section_line) {
    if (m.weight.has_value())
        throw ParseError(section_line, "duplicate #weight section");
    const std::size_t block_start = cur.pos;
    ComplexMatrix w = parse_matrix_block(cur);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (w(i, j).imag() != 0.0)
                // Row i sits one entry past the dimension line of the block.
                throw ParseError(cur.lines[block_start + 1 + i].number,
                                 "weight matrix must be real");
    m.weight = std::move(w);
}

}  // namespace

RawModel parse_model(std::istream& in) {
    const std::vector<Line> lines = load_lines(in);
    Cursor cur{lines};
    RawModel m;
    bool any = false;
    while (!cur.done()) {
        const Line& line = cur.take();
        if (!is_section(line.text)) {
            if (line.text[0] == '#') continue;  // plain comment line
            throw ParseError(line.number,
                             "expected a section header, found '" + line.text + "'");
        }
        any = true;
        const std::string head = split_tokens(line.text).front();
        if (head == "#channel") parse_channel(cur, m, line.number);
        else if (head == "#family") parse_family(cur, m, line.number);
        else if (head == "#group") parse_group(cur, m, line.number);
        else if (head == "#error") parse_error_section(cur, m, line.number);
        else parse_weight(cur, m, line.number);
    }
    if (!any) throw ParseError(1, "model file has no sections");
    return m;
}

RawModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_model(in);
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(cplx z) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

void emit_matrix(std::ostringstream& out, const ComplexMatrix& m) {
    out << m.rows() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            out << (j ? " " : "") << format_complex(m(i, j));
        out << "\n";
    }
}

}  // namespace

std::string serialize_model(const RawModel& m) {
    std::ostringstream out;
    if (m.has_channel()) {
        out << "#channel\n";
        for (std::size_t x = 0; x < m.channel_labels.size(); ++x)
            out << (x ? " " : "") << m.channel_labels[x];
        out << "\n";
        for (const ComplexMatrix& w : m.channel_outputs) emit_matrix(out, w);
    }
    if (m.has_family()) {
        out << "#family\n";
        for (std::size_t k = 0; k < m.theta.size(); ++k)
            out << (k ? " " : "") << format_real(m.theta[k]);
        out << "\n";
        emit_matrix(out, *m.family_rho);
        for (const ComplexMatrix& d : m.family_derivs) emit_matrix(out, d);
    }
    if (m.has_group()) {
        out << "#group\n" << m.group_order << "\n";
        for (std::size_t g = 0; g < m.group_order; ++g) {
            for (std::size_t h = 0; h < m.group_order; ++h)
                out << (h ? " " : "") << m.mult_table[g * m.group_order + h];
            out << "\n";
        }
        for (const ComplexMatrix& u : m.unitaries) emit_matrix(out, u);
        out << m.orbit_size << " " << m.theta0 << "\n";
        for (std::size_t g = 0; g < m.group_order; ++g) {
            for (std::size_t j = 0; j < m.orbit_size; ++j)
                out << (j ? " " : "") << m.action[g * m.orbit_size + j];
            out << "\n";
        }
        for (const ComplexMatrix& s : m.orbit_states) emit_matrix(out, s);
    }
    if (m.has_error()) {
        out << "#error\n";
        for (std::size_t i = 0; i < m.orbit_size; ++i) {
            for (std::size_t j = 0; j < m.orbit_size; ++j)
                out << (j ? " " : "")
                    << format_real(m.error[i * m.orbit_size + j]);
            out << "\n";
        }
    }
    if (m.weight.has_value()) {
        out << "#weight\n" << m.weight->rows() << "\n";
        for (std::size_t i = 0; i < m.weight->rows(); ++i) {
            for (std::size_t j = 0; j < m.weight->cols(); ++j)
                out << (j ? " " : "") << format_real((*m.weight)(i, j).real())
                    << "+0j";
            out << "\n";
        }
    }
    return out.str();
}

void write_model_file(const std::string& path, const RawModel& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << serialize_model(m);
}

CqChannel build_channel(const RawModel& m) {
    if (!m.has_channel()) throw Error("model has no #channel section");
    std::vector<DensityMatrix> outputs;
    outputs.reserve(m.channel_outputs.size());
    for (const ComplexMatrix& w : m.channel_outputs) outputs.emplace_back(w);
    return CqChannel(m.channel_labels, std::move(outputs));
}

StateFamily build_family(const RawModel& m) {
    if (!m.has_family()) throw Error("model has no #family section");
    std::vector<HermitianOp> derivs;
    derivs.reserve(m.family_derivs.size());
    for (const ComplexMatrix& d : m.family_derivs) derivs.emplace_back(d);
    return StateFamily(m.theta, DensityMatrix(*m.family_rho),
                       std::move(derivs));
}

CovariantModel build_covariant(const RawModel& m) {
    if (!m.has_group()) throw Error("model has no #group section");
    if (!m.has_error()) throw Error("model has no #error section");
    GroupRep rep(m.mult_table, m.unitaries);
    std::vector<DensityMatrix> states;
    states.reserve(m.orbit_states.size());
    for (const ComplexMatrix& s : m.orbit_states) states.emplace_back(s);
    return CovariantModel(std::move(rep), m.action, std::move(states),
                          m.error, m.theta0);
}

}  // namespace qib
