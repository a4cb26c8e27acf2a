#include "spectral/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spectral/expression.hpp"

namespace spectral::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

json potential_to_json(const Potential& q) {
    json j;
    switch (q.kind()) {
        case Potential::Kind::Constant:
            j["type"] = "constant";
            j["value"] = q.constant_value();
            break;
        case Potential::Kind::Handle:
            if (q.text().empty())
                throw std::invalid_argument("cannot serialize an opaque potential handle");
            j["type"] = "expr";
            j["text"] = q.text();
            if (!q.breakpoints().empty()) j["breakpoints"] = q.breakpoints();
            break;
        case Potential::Kind::Grid:
            j["type"] = "grid";
            j["x"] = q.nodes();
            j["q"] = q.node_values();
            break;
        case Potential::Kind::Step:
            j["type"] = "step";
            j["edges"] = q.nodes();
            j["values"] = q.node_values();
            break;
    }
    return j;
}

Potential potential_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw std::invalid_argument("potential: expected an object with a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    if (type == "constant") return Potential::constant(j.at("value").get<double>());
    if (type == "expr") {
        std::string text = j.at("text").get<std::string>();
        std::vector<double> breakpoints;
        if (j.contains("breakpoints")) breakpoints = j.at("breakpoints").get<std::vector<double>>();
        return Potential::expression(parse_expression(text), text, breakpoints);
    }
    if (type == "grid")
        return Potential::grid(j.at("x").get<std::vector<double>>(),
                               j.at("q").get<std::vector<double>>());
    if (type == "step")
        return Potential::step(j.at("edges").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("potential: unknown type \"" + type + "\"");
}

}  // namespace

std::string to_json(const SLProblem& problem) {
    json j;
    j["ell"] = problem.ell;
    j["alpha"] = problem.alpha;
    j["q"] = potential_to_json(problem.q);
    return j.dump(2);
}

SLProblem sl_problem_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("ell") || !j.contains("alpha") || !j.contains("q"))
        throw std::invalid_argument("SL problem: need \"ell\", \"alpha\" and \"q\"");
    return SLProblem(j.at("ell").get<double>(), j.at("alpha").get<double>(),
                     potential_from_json(j.at("q")));
}

std::string to_json(const SpectralMeasure& measure) {
    json j;
    json atoms = json::array();
    for (const auto& a : measure.atoms()) atoms.push_back({a.location, a.weight});
    j["atoms"] = atoms;
    if (measure.density()) {
        const auto& d = *measure.density();
        j["density"] = {{"grid", d.grid}, {"values", d.values}, {"weights", d.weights},
                        {"rule", d.rule}};
    }
    if (measure.tail()) {
        const auto& t = *measure.tail();
        j["tail"] = {{"c", t.c},       {"d", t.d},           {"p", t.p},
                     {"w", t.w},       {"q", t.q},           {"k_start", t.k_start},
                     {"two_sided", t.two_sided}, {"d_neg", t.d_neg}};
    }
    return j.dump(2);
}

SpectralMeasure measure_from_json(const std::string& text) {
    json j = parse(text);
    std::vector<Atom> atoms;
    for (const auto& a : j.value("atoms", json::array())) {
        if (!a.is_array() || a.size() != 2)
            throw std::invalid_argument("measure: atoms must be [location, weight] pairs");
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    std::optional<DensityComponent> density;
    if (j.contains("density")) {
        const auto& d = j.at("density");
        DensityComponent dc;
        dc.grid = d.at("grid").get<std::vector<double>>();
        dc.values = d.at("values").get<std::vector<double>>();
        dc.weights = d.at("weights").get<std::vector<double>>();
        dc.rule = d.value("rule", std::string("gauss-legendre"));
        density = std::move(dc);
    }
    std::optional<TailDescriptor> tail;
    if (j.contains("tail")) {
        const auto& t = j.at("tail");
        TailDescriptor td;
        td.c = t.at("c").get<double>();
        td.d = t.value("d", 0.0);
        td.p = t.value("p", 2);
        td.w = t.at("w").get<double>();
        td.q = t.value("q", 0.0);
        td.k_start = t.value("k_start", 1L);
        td.two_sided = t.value("two_sided", false);
        td.d_neg = t.value("d_neg", 0.0);
        tail = td;
    }
    return SpectralMeasure(std::move(atoms), std::move(density), tail);
}

std::string to_json(const Hamiltonian& h) {
    json j;
    j["ell"] = h.ell;
    j["entries"] = {{"h11", potential_to_json(h.h11)},
                    {"h12", potential_to_json(h.h12)},
                    {"h22", potential_to_json(h.h22)}};
    j["trace_normed"] = h.trace_normed;
    j["singular_end"] = h.singular_end;
    return j.dump(2);
}

Hamiltonian hamiltonian_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("ell") || !j.contains("entries"))
        throw std::invalid_argument("Hamiltonian: need \"ell\" and \"entries\"");
    const auto& e = j.at("entries");
    return Hamiltonian(j.at("ell").get<double>(), potential_from_json(e.at("h11")),
                       potential_from_json(e.at("h12")), potential_from_json(e.at("h22")),
                       j.value("singular_end", false), j.value("trace_normed", false));
}

std::string to_json(const MassDistribution& s) {
    json j;
    j["ell"] = s.ell();
    j["density"] = potential_to_json(s.density());
    json atoms = json::array();
    for (const auto& a : s.atoms()) atoms.push_back({a.x, a.jump});
    j["atoms"] = atoms;
    return j.dump(2);
}

MassDistribution string_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("ell") || !j.contains("density"))
        throw std::invalid_argument("string: need \"ell\" and \"density\"");
    std::vector<StringAtom> atoms;
    for (const auto& a : j.value("atoms", json::array())) {
        if (!a.is_array() || a.size() != 2)
            throw std::invalid_argument("string: atoms must be [x, jump] pairs");
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    return MassDistribution(j.at("ell").get<double>(), potential_from_json(j.at("density")),
                            std::move(atoms));
}

std::string format_number(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (columns.size() != header.size())
        throw std::invalid_argument("write_csv: header/column count mismatch");
    std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    std::ostringstream out;
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            out << (j ? "," : "") << format_number(columns[j][i]);
        out << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("write_csv: cannot open " + path);
    file << out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

}  // namespace spectral::io
