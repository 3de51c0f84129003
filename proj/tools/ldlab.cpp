// ldlab: command-line laboratory for sparse-graph convergence experiments.
// Exit codes: 0 pass, 1 criterion fail, 2 infeasible/budget, 3 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ldg/edit.hpp"
#include "ldg/families.hpp"
#include "ldg/hom.hpp"
#include "ldg/io.hpp"
#include "ldg/measures.hpp"
#include "ldg/neighborhood.hpp"
#include "ldg/partition_set.hpp"
#include "ldg/prokhorov.hpp"
#include "ldg/rate.hpp"
#include "ldg/sanov.hpp"
#include "ldg/scenarios.hpp"
#include "ldg/variational.hpp"

namespace {

using ldg::Json;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ldg::Graph load_graph(const std::string& path) {
    std::string text = slurp(path);
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{')
        return ldg::graph_from_json(Json::parse(text));
    return ldg::graph_from_text(text);
}

ldg::TargetGraph load_target(const std::string& path) {
    return ldg::target_from_json(Json::parse(slurp(path)));
}

ldg::Quotient load_quotient(const std::string& path) {
    return ldg::quotient_from_json(Json::parse(slurp(path)));
}

// colorings on the command line and in files are 1-based
ldg::Coloring parse_coloring(const std::string& text, int k) {
    ldg::Coloring c;
    c.k = k;
    std::istringstream in(text);
    int v;
    while (in >> v) c.values.push_back(v - 1);
    return c;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + out_path);
    f << content;
}

struct GlobalOpts {
    uint64_t seed = 0;
    unsigned long budget = ldg::kDefaultEnumerationBudget;
    std::string out;
    std::string format = "json";
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ldlab: graph quotients, empirical rate functions, partition functions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed recorded in all stochastic outputs");
    app.add_option("--budget", g.budget, "enumeration budget (colorings)");
    app.add_option("--out", g.out, "output file or directory");
    app.add_option("--format", g.format, "json or csv where applicable");

    // gen
    auto* gen = app.add_subcommand("gen", "realize a graph family member");
    std::string family = "cycle";
    int gen_index = 1, gen_len = 0, gen_dim = 1, gen_radius = 0, gen_nodes = 0, gen_degree = 3,
        gen_copies = 0;
    double gen_c = 2.0;
    std::string gen_base = "k2";
    gen->add_option("--family", family,
                    "cycle|lattice|copies|random-regular|random-bipartite-regular|erdos-renyi");
    gen->add_option("--index", gen_index, "sequence position");
    gen->add_option("--length", gen_len, "cycle length (0: use index)");
    gen->add_option("--dim", gen_dim, "lattice dimension");
    gen->add_option("--radius", gen_radius, "lattice radius n (0: use index)");
    gen->add_option("--nodes", gen_nodes, "vertex count for random families (0: use index)");
    gen->add_option("--degree", gen_degree, "degree for regular families");
    gen->add_option("--copies", gen_copies, "copy count for unions (0: use index)");
    gen->add_option("--base", gen_base, "base graph for unions: k2|c4|triangle|vertex");
    gen->add_option("--expected-degree", gen_c, "c for G(n, c/n)");

    // quotient
    auto* quo = app.add_subcommand("quotient", "quotient of a graph by a coloring");
    std::string quo_graph, quo_coloring;
    int quo_k = 2;
    quo->add_option("--graph", quo_graph, "graph file (json or edge list)")->required();
    quo->add_option("--coloring", quo_coloring, "1-based colors, space separated")->required();
    quo->add_option("-k,--colors", quo_k, "color count");

    // partition-set
    auto* pset = app.add_subcommand("partition-set", "exact or sampled quotient set");
    std::string pset_graph, pset_method = "exact";
    int pset_k = 2;
    unsigned long pset_samples = 10000;
    pset->add_option("--graph", pset_graph)->required();
    pset->add_option("-k,--colors", pset_k);
    pset->add_option("--method", pset_method, "exact|sampled");
    pset->add_option("--samples", pset_samples);

    // measures
    auto* mea = app.add_subcommand("measures", "random real coloring, measures, projection");
    std::string mea_graph;
    int mea_k = 4;
    mea->add_option("--graph", mea_graph)->required();
    mea->add_option("-k,--resolution", mea_k);

    // rate
    auto* rate = app.add_subcommand("rate", "empirical rate around a quotient");
    std::string rate_graph, rate_center, rate_delta = "1/8", rate_method = "exact";
    int rate_k = 2;
    unsigned long rate_samples = 100000;
    rate->add_option("--graph", rate_graph)->required();
    rate->add_option("--center", rate_center, "quotient json file")->required();
    rate->add_option("--delta", rate_delta, "ball radius (rational)");
    rate->add_option("-k,--colors", rate_k);
    rate->add_option("--method", rate_method, "exact|iid|flat");
    rate->add_option("--samples", rate_samples);

    // hom / free-energy
    auto* hom = app.add_subcommand("hom", "weighted homomorphism count");
    std::string hom_graph, hom_target, hom_alg = "components";
    hom->add_option("--graph", hom_graph)->required();
    hom->add_option("--target", hom_target, "target graph json")->required();
    hom->add_option("--alg", hom_alg, "brute|transfer|components");

    auto* fe = app.add_subcommand("free-energy", "-(1/|V|) log hom");
    std::string fe_graph, fe_target;
    fe->add_option("--graph", fe_graph)->required();
    fe->add_option("--target", fe_target)->required();

    // witness
    auto* wit = app.add_subcommand("witness", "edge-deletion witness for hard-core targets");
    std::string wit_graph, wit_target;
    double wit_eps = 0.2;
    wit->add_option("--graph", wit_graph)->required();
    wit->add_option("--target", wit_target)->required();
    wit->add_option("--eps", wit_eps);

    // maxcut
    auto* mc = app.add_subcommand("maxcut", "MaxCut bounds from a beta sweep");
    std::string mc_graph;
    std::vector<double> mc_betas = {5.0, 10.0, 20.0};
    mc->add_option("--graph", mc_graph)->required();
    mc->add_option("--betas", mc_betas, "beta values");

    // neighborhood
    auto* nbh = app.add_subcommand("neighborhood", "rooted r-ball frequency vector");
    std::string nbh_graph, nbh_coloring;
    int nbh_r = 1, nbh_m = 2;
    nbh->add_option("--graph", nbh_graph)->required();
    nbh->add_option("-r,--radius", nbh_r);
    nbh->add_option("--coloring", nbh_coloring, "optional 1-based colors");
    nbh->add_option("-m,--colors", nbh_m);

    // variational
    auto* var = app.add_subcommand("variational", "energy-entropy decomposition");
    std::string var_graph, var_target, var_delta = "1/8";
    var->add_option("--graph", var_graph)->required();
    var->add_option("--target", var_target)->required();
    var->add_option("--delta", var_delta);

    // scenario
    auto* sc = app.add_subcommand("scenario", "run a scripted experiment");
    std::string sc_name, sc_config;
    std::vector<std::string> sc_params;
    sc->add_option("--name", sc_name, "scenario name (see --list)");
    bool sc_list = false;
    sc->add_flag("--list", sc_list, "list scenario names");
    sc->add_option("--param", sc_params, "key=value scenario parameter");
    sc->add_option("--config", sc_config,
                   "declarative config file (json: scenario/seed/budget/params); "
                   "echoed verbatim into the bundle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            ldg::GraphFamily fam;
            if (family == "cycle") fam = ldg::GraphFamily::cycle(gen_len);
            else if (family == "lattice") fam = ldg::GraphFamily::lattice(gen_dim, gen_radius);
            else if (family == "copies") {
                ldg::Graph base = gen_base == "k2"    ? ldg::Graph::single_edge()
                                  : gen_base == "c4"  ? ldg::Graph::cycle(4)
                                  : gen_base == "triangle" ? ldg::Graph::complete(3)
                                                           : ldg::Graph::empty(1);
                fam = ldg::GraphFamily::disjoint_copies(base, gen_copies);
            } else if (family == "random-regular")
                fam = ldg::GraphFamily::random_regular(gen_nodes, gen_degree, g.seed);
            else if (family == "random-bipartite-regular")
                fam = ldg::GraphFamily::random_bipartite_regular(gen_nodes, gen_degree, g.seed);
            else if (family == "erdos-renyi")
                fam = ldg::GraphFamily::erdos_renyi(gen_nodes, gen_c, g.seed);
            else throw std::invalid_argument("unknown family: " + family);
            ldg::Graph graph = ldg::realize(fam, gen_index);
            write_output(g.out, g.format == "csv" ? ldg::graph_to_text(graph)
                                                  : ldg::graph_to_json(graph).dump(1));
        } else if (quo->parsed()) {
            ldg::Graph graph = load_graph(quo_graph);
            ldg::Coloring sigma = parse_coloring(quo_coloring, quo_k);
            write_output(g.out, ldg::quotient_to_json(ldg::quotient(graph, sigma)).dump(1));
        } else if (pset->parsed()) {
            ldg::Graph graph = load_graph(pset_graph);
            ldg::PartitionSetMethod method;
            if (pset_method == "exact") {
                method = ldg::PartitionSetMethod::exact_method(g.budget);
            } else if (pset_method == "sampled") {
                method = ldg::PartitionSetMethod::sampled(pset_samples, g.seed);
            } else {
                throw std::invalid_argument("unknown method: " + pset_method);
            }
            write_output(g.out,
                         ldg::quotient_set_to_json(ldg::partition_set(graph, pset_k, method))
                             .dump(1));
        } else if (mea->parsed()) {
            ldg::Graph graph = load_graph(mea_graph);
            ldg::RealColoring sigma = ldg::random_real_coloring(graph.n(), g.seed);
            ldg::MeasurePair m = ldg::build_measures(graph, sigma);
            ldg::StepMeasurePair s = ldg::project_tk(m, mea_k);
            double upper = ldg::prokhorov_upper_atoms_vs_step(m, s);
            Json out{{"seed", g.seed},
                     {"measures", ldg::measure_pair_to_json(m)},
                     {"projection", ldg::step_pair_to_json(s)},
                     {"projection_distance_upper_bound", ldg::format_double(upper)}};
            write_output(g.out, out.dump(1));
        } else if (rate->parsed()) {
            ldg::Graph graph = load_graph(rate_graph);
            ldg::RateQuery q{rate_k, load_quotient(rate_center), ldg::parse_rat(rate_delta)};
            ldg::RateEstimate est;
            if (rate_method == "exact") {
                est = ldg::rate_exact(graph, q, g.budget);
            } else if (rate_method == "iid") {
                ldg::IidOptions opt;
                opt.samples = rate_samples;
                opt.seed = g.seed;
                est = ldg::rate_iid(graph, q, opt);
            } else if (rate_method == "flat") {
                ldg::FlatHistogramOptions opt;
                opt.pitch = q.delta;
                opt.seed = g.seed;
                est = ldg::rate_flat_histogram(ldg::flat_histogram(graph, rate_k, opt), q);
            } else {
                throw std::invalid_argument("unknown rate method: " + rate_method);
            }
            write_output(g.out, ldg::rate_estimate_to_json(est).dump(1));
        } else if (hom->parsed()) {
            ldg::Graph graph = load_graph(hom_graph);
            ldg::TargetGraph target = load_target(hom_target);
            ldg::HomAlgorithm alg = hom_alg == "brute"      ? ldg::HomAlgorithm::Brute
                                    : hom_alg == "transfer" ? ldg::HomAlgorithm::Transfer
                                                            : ldg::HomAlgorithm::Components;
            ldg::LogPartition lp = ldg::hom_count(graph, target, alg, g.budget);
            Json out{{"log_value", ldg::format_double(lp.log_value)},
                     {"zero", lp.zero},
                     {"per_vertex", ldg::format_double(lp.per_vertex())}};
            if (lp.linear) out["value"] = ldg::format_double(*lp.linear);
            write_output(g.out, out.dump(1));
        } else if (fe->parsed()) {
            ldg::Graph graph = load_graph(fe_graph);
            double f = ldg::free_energy(graph, load_target(fe_target), g.budget);
            write_output(g.out, Json{{"free_energy", ldg::format_double(f)}}.dump(1));
        } else if (wit->parsed()) {
            ldg::Graph graph = load_graph(wit_graph);
            ldg::DeletionWitness w =
                ldg::deletion_witness(graph, load_target(wit_target), wit_eps, std::nullopt, g.budget);
            Json edges = Json::array();
            for (const auto& [u, v] : w.removed_edges) edges.push_back({u, v});
            Json out{{"removed_edges", edges},
                     {"r0", w.r0},
                     {"lambda", ldg::format_double(w.lambda)},
                     {"f_hat", ldg::format_double(w.f_hat)},
                     {"log_hom_after", ldg::format_double(w.log_hom_after)},
                     {"feasible", w.feasible}};
            write_output(g.out, out.dump(1));
            return w.feasible ? 0 : 1;
        } else if (mc->parsed()) {
            ldg::Graph graph = load_graph(mc_graph);
            ldg::MaxCutReport rep = ldg::maxcut_from_beta(graph, mc_betas, g.budget);
            if (g.format == "csv") {
                std::ostringstream csv;
                csv << "beta,lower,upper\n";
                for (const auto& row : rep.rows)
                    csv << row.beta << "," << ldg::format_double(row.lower) << ","
                        << ldg::format_double(row.upper) << "\n";
                write_output(g.out, csv.str());
            } else {
                Json rows = Json::array();
                for (const auto& row : rep.rows)
                    rows.push_back({{"beta", row.beta},
                                    {"lower", ldg::format_double(row.lower)},
                                    {"upper", ldg::format_double(row.upper)}});
                Json out{{"rows", rows}};
                if (rep.exact) {
                    out["exact"] = *rep.exact;
                    out["exact_within_bounds"] = rep.exact_within_bounds;
                }
                write_output(g.out, out.dump(1));
            }
        } else if (nbh->parsed()) {
            ldg::Graph graph = load_graph(nbh_graph);
            ldg::FrequencyVector v;
            if (nbh_coloring.empty()) {
                v = ldg::bs_frequencies(graph, nbh_r);
            } else {
                v = ldg::colored_frequencies(graph, parse_coloring(nbh_coloring, nbh_m), nbh_r);
            }
            write_output(g.out, ldg::frequency_vector_to_json(v).dump(1));
        } else if (var->parsed()) {
            ldg::Graph graph = load_graph(var_graph);
            ldg::TargetGraph target = load_target(var_target);
            ldg::Rat delta = ldg::parse_rat(var_delta);
            ldg::GibbsReport rep = ldg::gibbs_bucket_decomposition(graph, target, delta, g.budget);
            ldg::EnergyEntropyPoint p = ldg::variational_free_energy(graph, target, delta, g.budget);
            Json out{{"minimizer_cell", ldg::quotient_to_json(p.cell_corner)},
                     {"energy", ldg::format_double(p.energy_value)},
                     {"entropy", ldg::format_double(p.entropy_value)},
                     {"variational_value", ldg::format_double(p.free_value)},
                     {"direct_value", ldg::format_double(p.direct)},
                     {"gap", ldg::format_double(p.gap)},
                     {"slack_bound", ldg::format_double(p.slack_bound)},
                     {"gibbs_lower", ldg::format_double(rep.lower)},
                     {"gibbs_upper", ldg::format_double(rep.upper)},
                     {"sandwich_holds", rep.contains && rep.slack_ok}};
            write_output(g.out, out.dump(1));
            return (rep.contains && rep.slack_ok) ? 0 : 1;
        } else if (sc->parsed()) {
            if (sc_list) {
                for (const auto& name : ldg::scenario_names()) std::cout << name << "\n";
                return 0;
            }
            ldg::Scenario s;
            s.seed = g.seed;
            s.budget = g.budget;
            std::string raw_config;
            if (!sc_config.empty()) {
                raw_config = slurp(sc_config);
                Json cfg = Json::parse(raw_config);
                s.name = cfg.at("scenario").get<std::string>();
                if (cfg.contains("seed")) s.seed = cfg.at("seed").get<uint64_t>();
                if (cfg.contains("budget")) s.budget = cfg.at("budget").get<unsigned long>();
                if (cfg.contains("params"))
                    for (const auto& [key, value] : cfg.at("params").items())
                        s.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
            }
            if (!sc_name.empty()) s.name = sc_name;
            if (s.name.empty())
                throw std::invalid_argument("scenario: --name or --config required");
            for (const auto& kv : sc_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("bad --param (want key=value): " + kv);
                s.params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            ldg::ReportBundle bundle = ldg::run_scenario(s);
            if (!raw_config.empty()) bundle.files.emplace_back("config.json", raw_config);
            if (g.out.empty()) {
                std::cout << bundle.summary.dump(1) << "\n";
            } else {
                ldg::emit(bundle, g.out);
            }
            return bundle.exit_code();
        }
    } catch (const ldg::BudgetError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
