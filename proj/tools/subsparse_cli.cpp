// Command-line front end: dictionary generation, PRC/DRC certificates,
// solver runs, Monte Carlo campaigns, and closed-form bound evaluation.
// Every command writes a single artifact whose bytes depend only on the
// flags and the seed.

#include "subsparse/classifier.hpp"
#include "subsparse/conditions.hpp"
#include "subsparse/dictionary_io.hpp"
#include "subsparse/random_model.hpp"
#include "subsparse/report_io.hpp"
#include "subsparse/rng.hpp"
#include "subsparse/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace subsparse;

Vector load_query(const std::string& path, int expected_dim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("query: cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("query: invalid JSON: ") + e.what());
    }
    if (!j.is_array() || static_cast<int>(j.size()) != expected_dim)
        throw DomainError("query: expected an array of length D = " + std::to_string(expected_dim));
    Vector q(expected_dim);
    for (int i = 0; i < expected_dim; ++i) {
        if (!j[static_cast<size_t>(i)].is_number())
            throw DomainError("query: entries must be numbers");
        q[i] = j[static_cast<size_t>(i)].get<double>();
    }
    return q;
}

Method parse_method(const std::string& name) {
    if (name == "bp") return Method::bp;
    if (name == "omp") return Method::omp;
    throw DomainError("method: expected 'bp' or 'omp', got '" + name + "'");
}

struct GenConfig {
    int ambient_dim = 20;
    int subspace_dim = 2;
    int num_inliers = 20;
    double outlier_ratio = 1.0;
    std::vector<int> dims;
    std::vector<int> counts;
    std::uint64_t seed = 0;
    std::string output = "-";
};

int run_gen(const GenConfig& cfg) {
    if (!cfg.dims.empty() || !cfg.counts.empty()) {
        const UnionModel model = sample_union_model(cfg.ambient_dim, cfg.dims, cfg.counts, cfg.seed);
        save_dictionary(model.dictionary, cfg.output);
        return 0;
    }
    RandomModelParams params{cfg.ambient_dim, cfg.subspace_dim, cfg.num_inliers, cfg.outlier_ratio};
    save_dictionary(sample_instance(params, cfg.seed), cfg.output);
    return 0;
}

struct CheckConfig {
    std::string input;
    std::uint64_t budget = 2'000'000;
    int threads = 0;
    std::string output = "-";
};

int run_check(const CheckConfig& cfg) {
    const Dictionary dict = load_dictionary(cfg.input);
    DualPointOptions options;
    options.budget = cfg.budget;
    options.threads = cfg.threads;
    write_artifact(cfg.output, to_json(analyze_conditions(dict, options)) + "\n");
    return 0;
}

struct RecoverConfig {
    std::string input;
    std::string method = "bp";
    std::string query_path;
    bool sample_inlier = false;
    std::uint64_t seed = 0;
    double eps_res = 1e-9;
    double eps_opt = 1e-8;
    int max_iter = 0;
    int k_max = 8;
    std::string output = "-";
};

int run_recover(const RecoverConfig& cfg) {
    const Dictionary dict = load_dictionary(cfg.input);

    Vector b;
    if (!cfg.query_path.empty()) {
        b = load_query(cfg.query_path, dict.ambient_dim());
    } else if (cfg.sample_inlier) {
        if (!dict.has_partition())
            throw DomainError("recover: --sample-inlier needs a dictionary with a partition");
        Rng rng = Rng::substream(cfg.seed, 0);
        b = sample_unit_in_subspace(subspace_basis(dict.inlier_matrix()), rng);
    } else {
        throw DomainError("recover: provide --query <file> or --sample-inlier");
    }

    RecoveryResult result;
    if (cfg.method == "bp")
        result = bp_primal(dict.atoms(), b, cfg.eps_opt);
    else if (cfg.method == "omp")
        result = omp_solve(dict.atoms(), b, cfg.eps_res, cfg.max_iter);
    else if (cfg.method == "l0")
        result = l0_oracle(dict.atoms(), b, cfg.k_max);
    else
        throw DomainError("recover: unknown method '" + cfg.method + "'");

    JsonWriter w;
    w.begin_object();
    w.field("method", cfg.method);
    write_fields(w, result);
    if (dict.has_partition() && result.status == SolveStatus::converged)
        w.field("subspace_sparse", is_subspace_sparse(result, dict.partition().inliers));
    w.end_object();
    write_artifact(cfg.output, w.str() + "\n");
    return 0;
}

struct McConfig {
    int ambient_dim = 50;
    int subspace_dim = 2;
    int num_inliers = 100;
    double outlier_ratio = 1.0;
    int trials = 100;
    std::uint64_t seed = 0;
    int threads = 0;
    std::uint64_t budget = 100'000'000;
    std::string format = "json";
    std::string output = "-";
};

int run_mc(const McConfig& cfg) {
    RandomModelParams params{cfg.ambient_dim, cfg.subspace_dim, cfg.num_inliers, cfg.outlier_ratio};
    MonteCarloOptions options;
    options.threads = cfg.threads;
    options.dual_points.budget = cfg.budget;
    const MonteCarloReport report = monte_carlo_drc(params, cfg.trials, cfg.seed, options);
    if (cfg.format == "csv")
        write_artifact(cfg.output, to_csv(report));
    else if (cfg.format == "json")
        write_artifact(cfg.output, to_json(report) + "\n");
    else
        throw DomainError("mc: unknown format '" + cfg.format + "'");
    return 0;
}

struct BoundConfig {
    int ambient_dim = 50;
    int subspace_dim = 2;
    double rho0 = 0.0;
    int num_inliers = 0;
    double outlier_ratio = 1.0;
    std::string output = "-";
};

int run_bound(const BoundConfig& cfg) {
    double rho = cfg.rho0;
    if (rho <= 0.0) {
        if (cfg.num_inliers <= 0)
            throw DomainError("bound: provide --rho0 or --s0");
        rho = static_cast<double>(cfg.num_inliers) / cfg.subspace_dim;
    }
    const double bound =
        drc_probability_bound(cfg.ambient_dim, cfg.subspace_dim, rho, cfg.outlier_ratio);
    JsonWriter w;
    w.begin_object();
    w.field("D", cfg.ambient_dim);
    w.field("d0", cfg.subspace_dim);
    w.field("rho0", rho);
    w.field("lambda", cfg.outlier_ratio);
    w.field("k0", cfg.ambient_dim / (2.0 * cfg.subspace_dim) - cfg.subspace_dim);
    w.field("c_constant", c_constant(cfg.ambient_dim, cfg.subspace_dim));
    w.field("drc_probability_bound", bound);
    w.end_object();
    write_artifact(cfg.output, w.str() + "\n");
    return 0;
}

struct SrcConfig {
    std::string input;
    int ambient_dim = 30;
    std::vector<int> dims;
    std::vector<int> counts;
    int queries = 50;
    std::string method = "bp";
    std::uint64_t seed = 0;
    std::uint64_t budget = 2'000'000;
    std::string format = "json";
    std::string output = "-";
};

int run_src(const SrcConfig& cfg) {
    DualPointOptions options;
    options.budget = cfg.budget;

    UnionModel model = [&] {
        if (!cfg.input.empty()) return UnionModel::build(load_dictionary(cfg.input), options);
        if (cfg.dims.empty()) throw DomainError("src: provide --input or --dims/--counts");
        return sample_union_model(cfg.ambient_dim, cfg.dims, cfg.counts, cfg.seed, options);
    }();

    const Method method = parse_method(cfg.method);
    const ClassificationConditionReport condition = check_classification_condition(model);

    struct Row {
        int query;
        int true_group;
        int predicted;
        bool single_group;
    };
    std::vector<Row> rows;
    int correct = 0;
    int query_id = 0;
    for (size_t g = 0; g < model.groups.size(); ++g) {
        for (int q = 0; q < cfg.queries; ++q) {
            Rng rng = Rng::substream(cfg.seed ^ 0x51c5ull, static_cast<std::uint64_t>(query_id));
            const Vector query = sample_unit_in_subspace(model.groups[g].basis, rng);
            const Classification c = classify(model, query, method);
            rows.push_back({query_id, static_cast<int>(g), c.ok ? c.label : -1,
                            c.ok && c.single_group});
            if (c.ok && c.label == static_cast<int>(g)) ++correct;
            ++query_id;
        }
    }

    if (cfg.format == "csv") {
        std::string csv = "query,true_group,predicted,single_group\n";
        for (const Row& row : rows) {
            csv += std::to_string(row.query) + ',' + std::to_string(row.true_group) + ',' +
                   std::to_string(row.predicted) + ',' + (row.single_group ? '1' : '0') + '\n';
        }
        write_artifact(cfg.output, csv);
        return 0;
    }
    if (cfg.format != "json") throw DomainError("src: unknown format '" + cfg.format + "'");

    JsonWriter w;
    w.begin_object();
    w.field("method", cfg.method);
    w.field("groups", static_cast<int>(model.groups.size()));
    w.field("queries_per_group", cfg.queries);
    w.key("condition");
    {
        w.begin_object();
        w.field("all_hold", condition.all_hold);
        w.key("groups").begin_array();
        for (const GroupConditionReport& group : condition.groups) {
            w.begin_object();
            w.field("covering_radius", group.covering_radius);
            w.field("cross_distance", group.cross_distance);
            w.field("margin", group.margin);
            w.field("verdict", to_string(group.verdict));
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.field("correct", correct);
    w.field("total", query_id);
    w.field("accuracy", query_id > 0 ? static_cast<double>(correct) / query_id : 0.0);
    bool all_single = true;
    for (const Row& row : rows) all_single = all_single && row.single_group;
    w.field("all_single_group", all_single);
    {
        // closed-form bound for the model shape, when its preconditions admit one
        std::vector<int> dims, counts;
        for (const auto& group : model.groups) {
            dims.push_back(group.dim());
            counts.push_back(group.size());
        }
        try {
            w.field("classification_probability_bound",
                    classification_probability_bound(model.dictionary.ambient_dim(), dims, counts));
        } catch (const DomainError&) {
            w.field("classification_probability_bound", std::string_view("not_applicable"));
        }
    }
    w.end_object();
    write_artifact(cfg.output, w.str() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subspace-sparse recovery: certificates, solvers, bounds and experiments"};
    app.require_subcommand(1);

    GenConfig gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a dictionary file");
    gen_cmd->add_option("--D", gen.ambient_dim, "ambient dimension");
    gen_cmd->add_option("--d0", gen.subspace_dim, "subspace dimension");
    gen_cmd->add_option("--s0", gen.num_inliers, "number of inlier atoms");
    gen_cmd->add_option("--lambda", gen.outlier_ratio, "outlier/inlier ratio");
    gen_cmd->add_option("--dims", gen.dims, "union model: subspace dimension per group")
        ->delimiter(',');
    gen_cmd->add_option("--counts", gen.counts, "union model: atoms per group")->delimiter(',');
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_option("--output,-o", gen.output, "output path ('-' for stdout)");

    CheckConfig check;
    CLI::App* check_cmd = app.add_subcommand("check", "compute the PRC/DRC certificate");
    check_cmd->add_option("--input,-i", check.input, "dictionary JSON")->required();
    check_cmd->add_option("--budget", check.budget, "vertex enumeration candidate cap");
    check_cmd->add_option("--threads", check.threads, "worker threads (0: env or serial)");
    check_cmd->add_option("--output,-o", check.output, "output path");

    RecoverConfig recover;
    CLI::App* recover_cmd = app.add_subcommand("recover", "run a sparse solver on a query");
    recover_cmd->add_option("--input,-i", recover.input, "dictionary JSON")->required();
    recover_cmd->add_option("--method,-m", recover.method, "bp | omp | l0");
    recover_cmd->add_option("--query,-q", recover.query_path, "query vector (JSON array)");
    recover_cmd->add_flag("--sample-inlier", recover.sample_inlier,
                          "draw the query uniformly from the inlier subspace");
    recover_cmd->add_option("--seed", recover.seed, "seed for --sample-inlier");
    recover_cmd->add_option("--eps-res", recover.eps_res, "OMP stopping residual (relative)");
    recover_cmd->add_option("--eps-opt", recover.eps_opt, "BP optimality tolerance");
    recover_cmd->add_option("--max-iter", recover.max_iter, "OMP iteration cap (0: min(D, J))");
    recover_cmd->add_option("--k-max", recover.k_max, "l0 oracle support cap (<= 12)");
    recover_cmd->add_option("--output,-o", recover.output, "output path");

    McConfig mc;
    CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo DRC campaign");
    mc_cmd->add_option("--D", mc.ambient_dim, "ambient dimension");
    mc_cmd->add_option("--d0", mc.subspace_dim, "subspace dimension");
    mc_cmd->add_option("--s0", mc.num_inliers, "number of inlier atoms");
    mc_cmd->add_option("--lambda", mc.outlier_ratio, "outlier/inlier ratio");
    mc_cmd->add_option("--trials", mc.trials, "number of trials");
    mc_cmd->add_option("--seed", mc.seed, "master seed");
    mc_cmd->add_option("--threads", mc.threads, "worker threads (0: env or serial)");
    mc_cmd->add_option("--budget", mc.budget, "vertex enumeration candidate cap");
    mc_cmd->add_option("--format", mc.format, "json | csv");
    mc_cmd->add_option("--output,-o", mc.output, "output path");

    BoundConfig bound;
    CLI::App* bound_cmd = app.add_subcommand("bound", "evaluate the closed-form DRC bound");
    bound_cmd->add_option("--D", bound.ambient_dim, "ambient dimension");
    bound_cmd->add_option("--d0", bound.subspace_dim, "subspace dimension");
    bound_cmd->add_option("--rho0", bound.rho0, "sample density s0/d0");
    bound_cmd->add_option("--s0", bound.num_inliers, "number of inliers (alternative to --rho0)");
    bound_cmd->add_option("--lambda", bound.outlier_ratio, "outlier/inlier ratio");
    bound_cmd->add_option("--output,-o", bound.output, "output path");

    SrcConfig src;
    CLI::App* src_cmd = app.add_subcommand("src", "sparse-representation classification experiment");
    src_cmd->add_option("--input,-i", src.input, "dictionary JSON with groups");
    src_cmd->add_option("--D", src.ambient_dim, "ambient dimension (sampled model)");
    src_cmd->add_option("--dims", src.dims, "subspace dimension per group")->delimiter(',');
    src_cmd->add_option("--counts", src.counts, "atoms per group")->delimiter(',');
    src_cmd->add_option("--queries", src.queries, "queries per group");
    src_cmd->add_option("--method,-m", src.method, "bp | omp");
    src_cmd->add_option("--seed", src.seed, "random seed");
    src_cmd->add_option("--budget", src.budget, "vertex enumeration candidate cap");
    src_cmd->add_option("--format", src.format, "json | csv");
    src_cmd->add_option("--output,-o", src.output, "output path");

    try {
        app.parse(argc, argv);
        if (gen_cmd->parsed()) return run_gen(gen);
        if (check_cmd->parsed()) return run_check(check);
        if (recover_cmd->parsed()) return run_recover(recover);
        if (mc_cmd->parsed()) return run_mc(mc);
        if (bound_cmd->parsed()) return run_bound(bound);
        if (src_cmd->parsed()) return run_src(src);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    }
}
