#include "ldg/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ldg {

namespace {

std::string hex_encode(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    return Json{{"n", g.n()}, {"edges", edges}, {"degree_bound", g.degree_bound()}};
}

Graph graph_from_json(const Json& j) {
    std::vector<Graph::Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Graph(j.at("n").get<int>(), std::move(edges), j.at("degree_bound").get<int>());
}

std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    out << "# n=" << g.n() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<Graph::Edge> edges;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("n=");
            if (pos == std::string::npos) throw std::invalid_argument("graph text: bad header");
            n = std::stoi(line.substr(pos + 2));
            continue;
        }
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw std::invalid_argument("graph text: bad edge line");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw std::invalid_argument("graph text: missing '# n=' header");
    return Graph(n, std::move(edges));
}

Json quotient_to_json(const Quotient& q) {
    Json x = Json::array();
    for (const auto& v : q.x) x.push_back(rat_str(v));
    Json big = Json::array();
    for (const auto& row : q.X) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(rat_str(v));
        big.push_back(r);
    }
    return Json{{"k", q.k}, {"degree_bound", q.degree_bound}, {"x", x}, {"X", big}};
}

Quotient quotient_from_json(const Json& j) {
    Quotient q;
    q.k = j.at("k").get<int>();
    q.degree_bound = j.value("degree_bound", 0);
    for (const auto& v : j.at("x")) q.x.push_back(parse_rat(v.get<std::string>()));
    for (const auto& row : j.at("X")) {
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(parse_rat(v.get<std::string>()));
        q.X.push_back(std::move(r));
    }
    if (static_cast<int>(q.x.size()) != q.k || static_cast<int>(q.X.size()) != q.k)
        throw std::invalid_argument("quotient json: size mismatch");
    return q;
}

Json quotient_set_to_json(const QuotientSet& s) {
    Json pts = Json::array();
    for (const auto& q : s.points) pts.push_back(quotient_to_json(q));
    Json method;
    if (s.exact) {
        method = Json{{"kind", "exact"}};
    } else {
        method = Json{{"kind", "sampled"}, {"budget", s.sample_budget}, {"seed", s.seed}};
    }
    return Json{{"k", s.k}, {"n", s.n}, {"degree_bound", s.degree_bound},
                {"method", method}, {"points", pts}};
}

QuotientSet quotient_set_from_json(const Json& j) {
    QuotientSet s;
    s.k = j.at("k").get<int>();
    s.n = j.at("n").get<int>();
    s.degree_bound = j.value("degree_bound", 0);
    const auto& method = j.at("method");
    s.exact = method.at("kind").get<std::string>() == "exact";
    if (!s.exact) {
        s.sample_budget = method.at("budget").get<unsigned long>();
        s.seed = method.at("seed").get<uint64_t>();
    }
    for (const auto& p : j.at("points")) s.points.push_back(quotient_from_json(p));
    return s;
}

Json step_pair_to_json(const StepMeasurePair& s) {
    Json rho = Json::array();
    for (const auto& v : s.rho_cells) rho.push_back(rat_str(v));
    Json mu = Json::array();
    for (const auto& row : s.mu_cells) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(rat_str(v));
        mu.push_back(r);
    }
    return Json{{"k", s.k}, {"degree_bound", s.degree_bound}, {"rho", rho}, {"mu", mu}};
}

StepMeasurePair step_pair_from_json(const Json& j) {
    StepMeasurePair s;
    s.k = j.at("k").get<int>();
    s.degree_bound = j.value("degree_bound", 0);
    for (const auto& v : j.at("rho")) s.rho_cells.push_back(parse_rat(v.get<std::string>()));
    for (const auto& row : j.at("mu")) {
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(parse_rat(v.get<std::string>()));
        s.mu_cells.push_back(std::move(r));
    }
    return s;
}

Json measure_pair_to_json(const MeasurePair& m) {
    Json rho = Json::array();
    for (double v : m.rho_atoms) rho.push_back(format_double(v));
    Json mu = Json::array();
    for (const auto& [a, b] : m.mu_atoms) mu.push_back({format_double(a), format_double(b)});
    return Json{{"vertex_count", m.vertex_count},
                {"degree_bound", m.degree_bound},
                {"atom_mass", rat_str(m.atom_mass())},
                {"rho_atoms", rho},
                {"mu_atoms", mu}};
}

Json target_to_json(const TargetGraph& h) {
    Json alpha = Json::array();
    for (double v : h.alpha) alpha.push_back(v);
    Json a = Json::array();
    for (const auto& row : h.A) {
        Json r = Json::array();
        for (double v : row) r.push_back(v);
        a.push_back(r);
    }
    Json out{{"alpha", alpha}, {"A", a}};
    if (!h.labels.empty()) out["labels"] = h.labels;
    return out;
}

TargetGraph target_from_json(const Json& j) {
    TargetGraph h;
    for (const auto& v : j.at("alpha")) h.alpha.push_back(v.get<double>());
    for (const auto& row : j.at("A")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        h.A.push_back(std::move(r));
    }
    if (j.contains("labels"))
        for (const auto& v : j.at("labels")) h.labels.push_back(v.get<std::string>());
    h.validate();
    return h;
}

Json rate_estimate_to_json(const RateEstimate& e) {
    Json j;
    switch (e.method) {
        case RateEstimate::Method::Exact: j["method"] = "exact"; break;
        case RateEstimate::Method::Iid: j["method"] = "iid"; break;
        case RateEstimate::Method::FlatHistogram: j["method"] = "flat_histogram"; break;
        case RateEstimate::Method::SanovExact: j["method"] = "sanov_exact"; break;
        case RateEstimate::Method::SanovAsymptotic: j["method"] = "sanov_asymptotic"; break;
    }
    j["infinite"] = e.infinite;
    if (!e.infinite) j["value"] = format_double(e.value);
    if (e.method == RateEstimate::Method::Exact || e.method == RateEstimate::Method::SanovExact) {
        j["count"] = e.count.get_str();
        if (!e.infinite) j["log_count"] = format_double(e.log_count);
    }
    if (e.method == RateEstimate::Method::Iid) {
        j["samples"] = e.samples;
        j["seed"] = e.seed;
        j["ci"] = {format_double(e.ci_low), format_double(e.ci_high)};
        j["censored"] = e.censored;
    }
    if (e.method == RateEstimate::Method::FlatHistogram) {
        j["seed"] = e.seed;
        j["flat"] = e.flat;
        j["stages_completed"] = e.stages_completed;
    }
    return j;
}

std::string bucket_histogram_to_csv(const BucketHistogram& h) {
    std::ostringstream out;
    int tri = CountQuotient::tri_size(h.k);
    out << "# k=" << h.k << " n=" << h.n << " delta=" << rat_str(h.delta) << "\n";
    for (int i = 0; i < h.k; ++i) out << "x" << i + 1 << ",";
    for (int i = 0; i < h.k; ++i)
        for (int j = i; j < h.k; ++j) out << "X" << i + 1 << j + 1 << ",";
    out << "count\n";
    for (const auto& [cell, count] : h.cells) {
        for (int t = 0; t < h.k + tri; ++t) out << rat_str(Rat(cell[t]) * h.delta) << ",";
        out << count.get_str() << "\n";
    }
    return out.str();
}

Json frequency_vector_to_json(const FrequencyVector& v) {
    Json entries = Json::object();
    for (const auto& [key, mass] : v.entries) entries[hex_encode(key)] = rat_str(mass);
    Json decode = Json::object();
    for (const auto& [key, d] : v.decode) {
        Json edges = Json::array();
        for (const auto& [a, b] : d.edges) edges.push_back({a, b});
        Json item{{"n", d.n}, {"edges", edges}};
        if (!d.colors.empty()) {
            Json cols = Json::array();
            for (int c : d.colors) cols.push_back(c + 1);
            item["colors"] = cols;
        }
        decode[hex_encode(key)] = item;
    }
    return Json{{"m", v.m}, {"r", v.r}, {"entries", entries}, {"decode", decode}};
}

}  // namespace ldg
