#include "daqc/io.hpp"

#include <fstream>
#include <sstream>

namespace daqc::io {

namespace {

std::string axis_string(Axis a) { return std::string(1, axis_char(a)); }

Axis axis_field(const json& j, const char* name, ModelKind model) {
    if (!j.contains(name)) {
        if (model == ModelKind::ZZ) return Axis::Z;
        throw Error(ErrorKind::ParseError, std::string("coupling is missing '") + name + "'");
    }
    const std::string s = j.at(name).get<std::string>();
    if (s.size() != 1) throw Error(ErrorKind::ParseError, std::string("bad axis '") + s + "'");
    try {
        return parse_axis(s[0]);
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

template <typename F>
auto parsing(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::InvalidSize) {
            throw Error(ErrorKind::ParseError, e.what());
        }
        throw;
    }
}

}  // namespace

json to_json(const TwoBodyHamiltonian& h) {
    json couplings = json::array();
    for (const auto& [key, value] : h.couplings()) {
        couplings.push_back({{"i", key.i}, {"j", key.j}, {"mu", axis_string(key.mu)}, {"nu", axis_string(key.nu)},
                             {"value", value}});
    }
    return {{"n", h.n()}, {"model", model_name(h.model())}, {"couplings", couplings}};
}

TwoBodyHamiltonian hamiltonian_from_json(const json& j) {
    return parsing([&] {
        const int n = j.at("n").get<int>();
        const ModelKind model = parse_model(j.at("model").get<std::string>());
        TwoBodyHamiltonian h(n, model);
        if (j.contains("couplings")) {
            for (const json& c : j.at("couplings")) {
                CouplingKey key{c.at("i").get<int>(), c.at("j").get<int>(), axis_field(c, "mu", model),
                                axis_field(c, "nu", model)};
                if (h.couplings().count(key)) throw Error(ErrorKind::ParseError, "duplicate coupling " + key.str());
                h.set(key, c.at("value").get<double>());
            }
        }
        return h;
    });
}

json to_json(const Schedule& s) {
    json blocks = json::array();
    for (const ScheduleBlock& b : s.blocks) blocks.push_back({{"layer", b.layer.str()}, {"time", b.time}});
    json out{{"n", s.n},
             {"model", model_name(s.model)},
             {"T", s.T},
             {"total_time", s.total_time()},
             {"axis_order", kAxisPairOrder},
             {"blocks", blocks}};
    if (!s.problem_ref.empty()) out["problem_ref"] = s.problem_ref;
    if (!s.source_ref.empty()) out["source_ref"] = s.source_ref;
    return out;
}

Schedule schedule_from_json(const json& j) {
    return parsing([&] {
        Schedule s;
        s.n = j.at("n").get<int>();
        s.model = parse_model(j.at("model").get<std::string>());
        s.T = j.at("T").get<double>();
        for (const json& b : j.at("blocks")) {
            ScheduleBlock block{GateLayer::parse(b.at("layer").get<std::string>()), b.at("time").get<double>()};
            if (block.layer.size() != s.n) throw Error(ErrorKind::ParseError, "layer length differs from n");
            if (!(block.time >= 0.0)) throw Error(ErrorKind::ParseError, "negative block time");
            s.blocks.push_back(std::move(block));
        }
        if (j.contains("problem_ref")) s.problem_ref = j.at("problem_ref").get<std::string>();
        if (j.contains("source_ref")) s.source_ref = j.at("source_ref").get<std::string>();
        return s;
    });
}

json to_json(const BoundsReport& r) {
    json out{{"lower", r.lower}, {"upper", r.upper}, {"legacy", r.legacy}, {"conjecture", r.conjecture}};
    if (r.achieved) out["achieved"] = *r.achieved;
    return out;
}

json to_json(const VerificationReport& r) {
    json out{{"pass", r.pass()}};
    auto add = [&](const char* name, const CheckResult& c) {
        if (!c.computed) return;
        out[name] = {{"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    };
    add("coupling", r.coupling);
    add("matrix", r.matrix);
    add("unitary", r.unitary);
    return out;
}

json to_json(const ProblemVector& b) {
    json index = json::array();
    for (const CouplingKey& k : b.index) index.push_back(k.str());
    std::vector<double> values(b.values.data(), b.values.data() + b.values.size());
    return {{"n", b.n},           {"model", model_name(b.model)}, {"T", b.T},
            {"axis_order", kAxisPairOrder}, {"index", index},    {"values", values}};
}

ProblemVector problem_from_json(const json& j) {
    return parsing([&] {
        ProblemVector b;
        b.n = j.at("n").get<int>();
        b.model = parse_model(j.at("model").get<std::string>());
        b.T = j.value("T", 1.0);
        for (const json& k : j.at("index")) {
            CouplingKey key = parse_coupling_key(k.get<std::string>());
            validate_key(key, b.n, b.model);
            if (!b.index.empty() && !(b.index.back() < key)) {
                throw Error(ErrorKind::ParseError, "index is not strictly increasing at " + key.str());
            }
            b.index.push_back(key);
        }
        const auto values = j.at("values").get<std::vector<double>>();
        if (values.size() != b.index.size()) throw Error(ErrorKind::ParseError, "index and values differ in length");
        b.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
        return b;
    });
}

json to_json(const FacetSet& f) {
    json facets = json::array();
    for (const Facet& facet : f.facets) {
        facets.push_back({{"normal", facet.int_normal}, {"offset", facet.int_offset}, {"incidence", facet.incidence}});
    }
    return {{"dim", f.dim}, {"facets", facets}};
}

FacetSet facets_from_json(const json& j) {
    return parsing([&] {
        FacetSet f;
        f.dim = j.at("dim").get<int>();
        for (const json& item : j.at("facets")) {
            Facet facet;
            facet.int_normal = item.at("normal").get<std::vector<std::int64_t>>();
            facet.int_offset = item.at("offset").get<std::int64_t>();
            facet.incidence = item.at("incidence").get<std::vector<int>>();
            if (static_cast<int>(facet.int_normal.size()) != f.dim) {
                throw Error(ErrorKind::ParseError, "facet normal length differs from dim");
            }
            facet.normal.resize(f.dim);
            for (int c = 0; c < f.dim; ++c) facet.normal(c) = static_cast<double>(facet.int_normal[static_cast<std::size_t>(c)]);
            facet.offset = static_cast<double>(facet.int_offset);
            f.facets.push_back(std::move(facet));
        }
        return f;
    });
}

json to_json(const SampleResult& s, ModelKind model) {
    std::vector<double> values(s.values.data(), s.values.data() + s.values.size());
    return {{"model", model_name(model)}, {"n", s.n},           {"distribution", distribution_name(s.kind)},
            {"index", s.index},           {"values", values},   {"achieved", s.achieved}};
}

json to_json(const GapRecord& r) {
    std::vector<double> values(r.values.data(), r.values.data() + r.values.size());
    return {{"distribution", distribution_name(r.kind)},
            {"values", values},
            {"achieved", r.achieved},
            {"conjecture", r.conjecture},
            {"ratio", r.ratio},
            {"violation", r.violation}};
}

std::string sign_matrix_csv(const SignMatrix& M) {
    std::ostringstream out;
    out << "coupling";
    for (const GateLayer& layer : M.layers) out << ',' << layer.str();
    out << '\n';
    for (int r = 0; r < M.rows(); ++r) {
        out << M.index[static_cast<std::size_t>(r)].str();
        for (int c = 0; c < M.cols(); ++c) out << ',' << static_cast<int>(M.entries(r, c));
        out << '\n';
    }
    return out.str();
}

json error_json(const Error& e) { return {{"error", std::string(error_tag(e.kind()))}, {"message", e.what()}}; }

CouplingKey parse_coupling_key(const std::string& s) {
    // "i-j:munu"
    const auto dash = s.find('-');
    const auto colon = s.find(':');
    if (dash == std::string::npos || colon == std::string::npos || colon < dash || s.size() != colon + 3) {
        throw Error(ErrorKind::ParseError, "bad coupling key '" + s + "'");
    }
    try {
        return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1, colon - dash - 1)), parse_axis(s[colon + 1]),
                parse_axis(s[colon + 2])};
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad coupling key '" + s + "'");
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

}  // namespace daqc::io
