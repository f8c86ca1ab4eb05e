#include "matchkit/commands.hpp"
#include "matchkit/error.hpp"
#include "matchkit/theorems.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace matchkit;

namespace {

struct GenFlags
{
    std::uint64_t seed = 1;
    int count = 1;
    int firms = 3;
    int workers = 3;
    std::string mode = "many-to-one";
    std::string strategy = "quota-priority";
    std::string quota = "1-2";
    std::string accept = "3/4";
};

void add_gen_flags(CLI::App* cmd, GenFlags& g)
{
    cmd->add_option("--seed", g.seed, "Corpus seed")->capture_default_str();
    cmd->add_option("--count", g.count, "Number of markets")->capture_default_str();
    cmd->add_option("--firms", g.firms, "Firms per market")->capture_default_str();
    cmd->add_option("--workers", g.workers, "Workers per market")->capture_default_str();
    cmd->add_option("--mode", g.mode, "many-to-one (m21) or many-to-many (m2m)")->capture_default_str();
    cmd->add_option("--strategy", g.strategy, "quota-priority, subset-rejection or mixed")->capture_default_str();
    cmd->add_option("--quota", g.quota, "Quota range lo-hi")->capture_default_str();
    cmd->add_option("--accept", g.accept, "Acceptability chance n/d")->capture_default_str();
}

// Returns false (after printing) on a malformed flag value.
bool to_config(const GenFlags& g, GenConfig& config, bool& mixed, const EnumerationLimits& limits)
{
    config.seed = g.seed;
    config.n_firms = g.firms;
    config.n_workers = g.workers;
    config.limits = limits;
    if (g.mode == "many-to-one" || g.mode == "m21")
        config.mode = Mode::ManyToOne;
    else if (g.mode == "many-to-many" || g.mode == "m2m")
        config.mode = Mode::ManyToMany;
    else {
        std::cerr << "error: --mode must be many-to-one or many-to-many\n";
        return false;
    }
    mixed = g.strategy == "mixed";
    if (g.strategy == "quota-priority" || mixed)
        config.strategy = GenStrategy::QuotaPriority;
    else if (g.strategy == "subset-rejection")
        config.strategy = GenStrategy::SubsetRejection;
    else {
        std::cerr << "error: --strategy must be quota-priority, subset-rejection or mixed\n";
        return false;
    }
    try {
        std::tie(config.quota_min, config.quota_max) = parse_range(g.quota);
        config.acceptability = parse_probability(g.accept);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stability notions for two-sided matching markets with substitutable choice functions"};
    app.require_subcommand(1);

    std::string setwise = "union";
    bool preserve = false;
    app.add_option("--setwise", setwise, "Setwise domination reading: union or per-agent")
        ->check(CLI::IsMember({"union", "per-agent"}))
        ->capture_default_str();
    app.add_flag("--preserve-outside-links", preserve, "Setwise: agents outside S keep their links");

    std::string path;
    std::string matching;
    bool tsv = false;

    auto* validate = app.add_subcommand("validate", "Parse and validate a market file");
    validate->add_option("file", path, "Market file")->required();

    auto* classify = app.add_subcommand("classify", "Classify one matching");
    classify->add_option("file", path, "Market file")->required();
    classify->add_option("--match", matching, "Matching, e.g. \"f1:w2 w3; f2:w1\"")->required();
    classify->add_flag("--tsv", tsv, "Tab-separated output");

    auto* sets = app.add_subcommand("sets", "Classify every matching and compare the sets");
    sets->add_option("file", path, "Market file")->required();
    sets->add_flag("--tsv", tsv, "Tab-separated output");

    GenFlags verify_gen;
    bool use_gen = false;
    std::string theorems = "all";
    auto* verify = app.add_subcommand("verify", "Check the theorems on a market file or a generated corpus");
    verify->add_option("file", path, "Market file");
    verify->add_flag("--gen", use_gen, "Use a generated corpus instead of a file");
    add_gen_flags(verify, verify_gen);
    verify->add_option("--theorems", theorems, "all, m21, m2m, list, or comma-separated ids")->capture_default_str();
    verify->add_flag("--tsv", tsv, "Tab-separated output");

    WitnessRequest witness_request;
    auto* witness = app.add_subcommand("witness", "Run a proof construction");
    witness->add_option("file", path, "Market file")->required();
    witness->add_option("--match", matching, "Matching")->required();
    witness->add_option("--kind", witness_request.kind,
                        "blocking-pair, firm-block, quasi-core-pair, setwise or double-quasi")
        ->required();
    witness->add_option("--pair", witness_request.pair, "firm,worker");
    witness->add_option("--agent", witness_request.agent, "Agent label");
    witness->add_option("--set", witness_request.set, "Labels of the offered set");
    witness->add_option("--dominating", witness_request.dominating, "Dominating matching");
    witness->add_option("--coalition", witness_request.coalition, "Coalition labels");

    GenFlags gen_flags;
    std::string out_dir;
    auto* gen = app.add_subcommand("gen", "Generate markets");
    add_gen_flags(gen, gen_flags);
    gen->add_option("--out", out_dir, "Directory for market-NNNN.market files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    CommandOptions options;
    options.tsv = tsv;
    options.domination.reading = setwise == "per-agent" ? SetwiseReading::PerAgent : SetwiseReading::Union;
    options.domination.preserve_outside_links = preserve;
    if (const char* cap = std::getenv("MATCHKIT_MAX_EDGES")) {
        try {
            std::size_t used = 0;
            options.limits.max_edges = std::stoi(cap, &used);
            if (used != std::string(cap).size() || options.limits.max_edges < 0)
                throw std::invalid_argument(cap);
        } catch (const std::logic_error&) {
            std::cerr << "error: MATCHKIT_MAX_EDGES must be a non-negative integer\n";
            return exit_usage;
        }
    }

    if (*validate)
        return cmd_validate(path, std::cout, std::cerr);
    if (*classify)
        return cmd_classify(path, matching, options, std::cout, std::cerr);
    if (*sets)
        return cmd_sets(path, options, std::cout, std::cerr);
    if (*verify) {
        if (theorems == "list") {
            std::vector<Theorem> all = select_theorems("all");
            for (const auto& t : all)
                std::cout << t.id << '\t' << t.statement << '\t'
                          << (!t.mode ? "both" : *t.mode == Mode::ManyToOne ? "m21" : "m2m") << '\n';
            return exit_ok;
        }
        if (use_gen == !path.empty()) {
            std::cerr << "error: verify takes either a market file or --gen\n";
            return exit_usage;
        }
        VerifyRequest request;
        request.path = path;
        request.theorems = theorems;
        request.count = verify_gen.count;
        if (use_gen && !to_config(verify_gen, request.gen, request.mixed, options.limits))
            return exit_usage;
        return cmd_verify(request, options, std::cout, std::cerr);
    }
    if (*witness)
        return cmd_witness(path, matching, witness_request, std::cout, std::cerr);
    if (*gen) {
        GenConfig config;
        bool mixed = false;
        if (!to_config(gen_flags, config, mixed, options.limits))
            return exit_usage;
        return cmd_gen(config, gen_flags.count, mixed, out_dir, std::cout, std::cerr);
    }
    return exit_usage;
}
