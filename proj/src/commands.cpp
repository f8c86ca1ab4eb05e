#include "matchkit/commands.hpp"

#include "matchkit/error.hpp"
#include "matchkit/market_file.hpp"
#include "matchkit/theorems.hpp"
#include "matchkit/witness.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace matchkit {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

std::string pair_text(const Market& market, BlockingPair pair)
{
    return "(" + market.label(firm(pair.firm)) + ", " + market.label(worker(pair.worker)) + ")";
}

std::string witness_text(const Market& market, const DominationWitness& w)
{
    return "[" + format_matching(market, w.dominating) + "] via " + format_coalition(market, w.coalition);
}

std::string violation_text(const Market& market, const QuasiViolation& v)
{
    const Side opposite_side = opposite(v.agent.side);
    return market.label(v.agent) + " offered " + format_set(market, opposite_side, v.offered) + " chooses "
        + format_set(market, opposite_side, v.chosen);
}

std::string note_for(const Market& market, const ClassificationRecord& r, StabilitySet set)
{
    const std::string not_ir = "not individually rational";
    const bool needs_ir = set == StabilitySet::PairwiseStable || set == StabilitySet::WorkerQuasiStable
        || set == StabilitySet::FirmQuasiStable || set == StabilitySet::SetwiseStable
        || set == StabilitySet::WorkerQuasiSetwise || set == StabilitySet::FirmQuasiSetwise;
    if (needs_ir && !r.individually_rational)
        return not_ir;
    switch (set) {
    case StabilitySet::IndividuallyRational:
        return "blocked by " + market.label(*r.blocking_agent);
    case StabilitySet::PairwiseStable:
        return r.blocking_pair ? "blocking pair " + pair_text(market, *r.blocking_pair) : not_ir;
    case StabilitySet::Core:
        return "dominated by " + witness_text(market, *r.core_witness);
    case StabilitySet::WorkerQuasiCore:
        return "dominated by " + witness_text(market, *r.worker_quasi_core_witness);
    case StabilitySet::FirmQuasiCore:
        return "dominated by " + witness_text(market, *r.firm_quasi_core_witness);
    case StabilitySet::WorkerQuasiStable:
        return r.worker_quasi_violation ? violation_text(market, *r.worker_quasi_violation) : not_ir;
    case StabilitySet::FirmQuasiStable:
        return r.firm_quasi_violation ? violation_text(market, *r.firm_quasi_violation) : not_ir;
    case StabilitySet::SetwiseStable:
        return r.setwise_witness ? "setwise dominated by " + witness_text(market, *r.setwise_witness) : not_ir;
    case StabilitySet::WorkerQuasiSetwise:
        return r.worker_quasi_setwise_witness
            ? "setwise dominated by " + witness_text(market, *r.worker_quasi_setwise_witness)
            : not_ir;
    case StabilitySet::FirmQuasiSetwise:
        return r.firm_quasi_setwise_witness
            ? "setwise dominated by " + witness_text(market, *r.firm_quasi_setwise_witness)
            : not_ir;
    }
    return {};
}

void tsv_header(std::ostream& out, const char* first)
{
    out << first;
    for (StabilitySet s : all_stability_sets)
        out << '\t' << short_name(s);
    out << '\n';
}

void tsv_row(std::ostream& out, const Market& market, const ClassificationRecord& r)
{
    out << format_matching(market, r.matching);
    for (StabilitySet s : all_stability_sets)
        out << '\t' << (r.member(s) ? 1 : 0);
    out << '\n';
}

std::string market_summary(const Market& market)
{
    std::ostringstream s;
    s << to_string(market.mode()) << ", " << market.n_firms() << (market.n_firms() == 1 ? " firm, " : " firms, ")
      << market.n_workers() << (market.n_workers() == 1 ? " worker" : " workers");
    return s.str();
}

SubsetMask parse_labels(const Market& market, Side side, std::string text)
{
    for (char& c : text)
        if (c == '{' || c == '}' || c == ',')
            c = ' ';
    std::istringstream in(text);
    SubsetMask set = 0;
    std::string name;
    while (in >> name) {
        const auto id = market.find(name);
        if (!id || id->side != side)
            throw Error(ErrorCode::UnknownAgent, "'" + name + "' is not a " + std::string(to_string(side)));
        set |= bits::single(id->index);
    }
    return set;
}

CoalitionMask parse_coalition(const Market& market, std::string text)
{
    for (char& c : text)
        if (c == '{' || c == '}' || c == ',')
            c = ' ';
    std::istringstream in(text);
    CoalitionMask mask = 0;
    std::string name;
    while (in >> name) {
        const auto id = market.find(name);
        if (!id)
            throw Error(ErrorCode::UnknownAgent, "unknown agent '" + name + "'");
        mask |= CoalitionMask{1} << market.coalition_bit(*id);
    }
    return mask;
}

BlockingPair parse_pair(const Market& market, std::string text)
{
    for (char& c : text)
        if (c == '(' || c == ')' || c == ',')
            c = ' ';
    std::istringstream in(text);
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra))
        throw Error(ErrorCode::ConfigInvalid, "a pair is written firm,worker");
    const auto f = market.find(a);
    const auto w = market.find(b);
    if (!f || f->side != Side::Firm)
        throw Error(ErrorCode::UnknownAgent, "'" + a + "' is not a firm");
    if (!w || w->side != Side::Worker)
        throw Error(ErrorCode::UnknownAgent, "'" + b + "' is not a worker");
    return BlockingPair{f->index, w->index};
}

AgentId parse_agent(const Market& market, const std::string& text, Side side)
{
    const auto id = market.find(text);
    if (!id || id->side != side)
        throw Error(ErrorCode::UnknownAgent, "'" + text + "' is not a " + std::string(to_string(side)));
    return *id;
}

void print_report(std::ostream& out, const Market& market, const ConstructionReport& report)
{
    out << "construction: " << report.description << '\n';
    out << "dominating:   " << format_matching(market, report.dominating) << '\n';
    out << "coalition:    " << format_coalition(market, report.coalition) << '\n';
    out << "kind:         " << to_string(report.kind) << '\n';
    out << "verified:     " << (report.verified ? "yes" : "no") << '\n';
}

} // namespace

Probability parse_probability(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        Probability p;
        if (slash == std::string::npos) {
            p.numerator = std::stoull(text, &used);
            p.denominator = 1;
            if (used != text.size())
                throw std::invalid_argument(text);
        } else {
            const std::string num = text.substr(0, slash);
            const std::string den = text.substr(slash + 1);
            p.numerator = std::stoull(num, &used);
            if (used != num.size())
                throw std::invalid_argument(text);
            p.denominator = std::stoull(den, &used);
            if (used != den.size())
                throw std::invalid_argument(text);
        }
        if (p.denominator == 0 || p.numerator > p.denominator)
            throw std::invalid_argument(text);
        return p;
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ConfigInvalid, "probability must be written n/d with n <= d, got '" + text + "'");
    }
}

std::pair<int, int> parse_range(const std::string& text)
{
    const auto dash = text.find('-');
    try {
        std::size_t used = 0;
        if (dash == std::string::npos) {
            const int v = std::stoi(text, &used);
            if (used != text.size())
                throw std::invalid_argument(text);
            return {v, v};
        }
        const std::string lo = text.substr(0, dash);
        const std::string hi = text.substr(dash + 1);
        const int a = std::stoi(lo, &used);
        if (used != lo.size())
            throw std::invalid_argument(text);
        const int b = std::stoi(hi, &used);
        if (used != hi.size())
            throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ConfigInvalid, "range must be written lo-hi, got '" + text + "'");
    }
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Market market = load_market(path);
        out << path << ": valid " << market_summary(market) << '\n';
        auto agent_line = [&](AgentId a) {
            const ChoiceFunction& c = market.choice(a);
            out << "  " << std::left << std::setw(8) << market.label(a)
                << (market.declared_preference(a) ? "ranking" : "table  ") << "  "
                << (is_substitutable(c) ? "substitutable" : "not substitutable") << ", "
                << (is_consistent(c) ? "consistent" : "not consistent") << ", "
                << (is_path_independent(c) ? "path independent" : "not path independent") << '\n';
        };
        for (int f = 0; f < market.n_firms(); ++f)
            agent_line(firm(f));
        for (int w = 0; w < market.n_workers(); ++w)
            agent_line(worker(w));
        return exit_ok;
    });
}

int cmd_classify(const std::string& path, const std::string& matching, const CommandOptions& options,
                 std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Market market = load_market(path);
        const Matching mu = parse_matching(market, matching);
        const DominationSearch search(market, options.limits, options.domination);
        const ClassificationRecord r = classify(search, mu);

        if (options.tsv) {
            tsv_header(out, "matching");
            tsv_row(out, market, r);
            return exit_ok;
        }
        out << "market:   " << market_summary(market) << '\n';
        out << "matching: " << format_matching(market, mu) << '\n';
        out << "setwise:  " << to_string(options.domination.reading) << " reading\n";
        out << "blocking pairs:";
        const auto pairs = blocking_pairs(market, mu);
        if (pairs.empty())
            out << " none";
        for (const BlockingPair& p : pairs)
            out << ' ' << pair_text(market, p);
        out << "\n\n";
        for (StabilitySet s : all_stability_sets) {
            const bool in = r.member(s);
            out << std::left << std::setw(6) << short_name(s) << (in ? "yes" : "no ");
            if (!in)
                out << "  " << note_for(market, r, s);
            out << '\n';
        }
        return exit_ok;
    });
}

int cmd_sets(const std::string& path, const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Market market = load_market(path);
        const DominationSearch search(market, options.limits, options.domination);
        const StabilitySets sets = stability_sets(search);
        const auto matrix = inclusion_matrix(sets);

        if (options.tsv) {
            for (const auto& r : sets.records) {
                out << "row\t";
                tsv_row(out, market, r);
            }
            for (StabilitySet s : all_stability_sets)
                out << "count\t" << short_name(s) << '\t' << sets.of(s).size() << '\n';
            for (const auto& cell : matrix) {
                out << "inclusion\t" << short_name(cell.subset) << '\t' << short_name(cell.superset) << '\t'
                    << to_string(cell.status) << '\t'
                    << (cell.witness ? format_matching(market, sets.records[*cell.witness].matching) : "-") << '\n';
            }
            return exit_ok;
        }

        std::size_t width = 8;
        for (const auto& r : sets.records)
            width = std::max(width, format_matching(market, r.matching).size());
        out << "market:  " << market_summary(market) << ", " << sets.records.size() << " matchings\n";
        out << "setwise: " << to_string(options.domination.reading) << " reading\n\n";
        out << std::left << std::setw(static_cast<int>(width)) << "matching";
        for (StabilitySet s : all_stability_sets)
            out << ' ' << std::setw(static_cast<int>(short_name(s).size())) << short_name(s);
        out << '\n';
        for (const auto& r : sets.records) {
            out << std::left << std::setw(static_cast<int>(width)) << format_matching(market, r.matching);
            for (StabilitySet s : all_stability_sets)
                out << ' ' << std::setw(static_cast<int>(short_name(s).size())) << (r.member(s) ? "1" : ".");
            out << '\n';
        }
        out << "\nsizes:\n";
        for (StabilitySet s : all_stability_sets)
            out << "  " << std::setw(6) << short_name(s) << sets.of(s).size() << '\n';

        out << "\ninclusions (row within column; + holds, x fails):\n";
        out << std::setw(7) << "";
        for (StabilitySet s : all_stability_sets)
            out << std::setw(6) << short_name(s);
        out << '\n';
        std::size_t i = 0;
        for (StabilitySet a : all_stability_sets) {
            out << std::setw(7) << short_name(a);
            for (std::size_t j = 0; j < all_stability_sets.size(); ++j, ++i) {
                const auto status = matrix[i].status;
                out << std::setw(6)
                    << (status == InclusionStatus::Holds ? "+" : status == InclusionStatus::Fails ? "x" : "-");
            }
            out << '\n';
        }
        return exit_ok;
    });
}

int cmd_verify(const VerifyRequest& request, const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        TheoremVerifier verifier(select_theorems(request.theorems), options.limits, options.domination);
        std::string source;
        if (!request.path.empty()) {
            verifier.add(load_market(request.path), request.path);
            source = request.path;
        } else {
            const auto markets =
                request.mixed ? gen_mixed_corpus(request.gen, request.count) : gen_corpus(request.gen, request.count);
            for (std::size_t i = 0; i < markets.size(); ++i)
                verifier.add(markets[i], "gen[" + std::to_string(i) + "]");
            std::ostringstream s;
            s << request.count << " generated " << request.gen.n_firms << "x" << request.gen.n_workers << ' '
              << to_string(request.gen.mode) << " markets, seed " << request.gen.seed << ", "
              << (request.mixed ? "mixed" : std::string(to_string(request.gen.strategy))) << ", quota "
              << request.gen.quota_min << "-" << request.gen.quota_max << ", accept "
              << request.gen.acceptability.numerator << "/" << request.gen.acceptability.denominator;
            source = s.str();
        }

        const auto& outcomes = verifier.outcomes();
        if (options.tsv) {
            out << "id\tstatement\tmode\tstatus\tmarkets\tmatchings\tconstructions\tcounterexample\tstrict_witness\n";
            for (const auto& o : outcomes) {
                out << o.theorem.id << '\t' << o.theorem.statement << '\t'
                    << (!o.theorem.mode ? "both" : *o.theorem.mode == Mode::ManyToOne ? "m21" : "m2m") << '\t'
                    << (!o.applicable() ? "n/a" : o.holds ? "holds" : "fails") << '\t' << o.markets << '\t'
                    << o.matchings << '\t' << o.constructions << '\t' << o.counterexample.value_or("-") << '\t'
                    << o.strict_witness.value_or("-") << '\n';
            }
            return verifier.all_hold() ? exit_ok : exit_failure;
        }

        out << "source:  " << source << '\n';
        out << "setwise: " << to_string(options.domination.reading) << " reading"
            << (options.domination.preserve_outside_links ? ", outside links preserved" : "") << "\n\n";
        std::size_t width = 0;
        for (const auto& o : outcomes)
            width = std::max(width, o.theorem.id.size());
        int failed = 0;
        int checked = 0;
        for (const auto& o : outcomes) {
            out << std::left << std::setw(static_cast<int>(width + 2)) << o.theorem.id << o.theorem.statement << ": ";
            if (!o.applicable()) {
                out << "NOT APPLICABLE\n";
                continue;
            }
            ++checked;
            if (o.holds) {
                out << "HOLDS";
                if (o.strict_witness)
                    out << " (strict; witness " << *o.strict_witness << ")";
            } else {
                ++failed;
                out << "FAILS (" << *o.counterexample << ")";
            }
            out << "  [" << o.markets << (o.markets == 1 ? " market, " : " markets, ") << o.matchings
                << " matchings";
            if (o.constructions > 0)
                out << ", " << o.constructions << " constructions verified";
            out << "]\n";
        }
        out << "\n" << checked << " checked, " << failed << " failed\n";
        return failed == 0 ? exit_ok : exit_failure;
    });
}

int cmd_witness(const std::string& path, const std::string& matching, const WitnessRequest& request,
                std::ostream& out, std::ostream& err)
{
    return guarded(err, [&]() -> int {
        const Market market = load_market(path);
        const Matching mu = parse_matching(market, matching);
        const std::string& kind = request.kind;
        if (kind == "blocking-pair") {
            print_report(out, market, domination_from_blocking_pair_m21(market, mu, parse_pair(market, request.pair)));
        } else if (kind == "firm-block") {
            const AgentId f = parse_agent(market, request.agent, Side::Firm);
            print_report(out, market,
                         domination_from_firm_block_m21(market, mu, f.index,
                                                        parse_labels(market, Side::Worker, request.set)));
        } else if (kind == "quasi-core-pair") {
            const AgentId w = parse_agent(market, request.agent, Side::Worker);
            const Matching dominating = parse_matching(market, request.dominating);
            const Coalition s = Coalition::from_mask(market, parse_coalition(market, request.coalition));
            const BlockingPair pair = blocking_pair_from_quasi_core_violation_m21(market, mu, dominating, s, w.index);
            out << "blocking pair: " << pair_text(market, pair) << '\n';
        } else if (kind == "setwise") {
            const AgentId w = parse_agent(market, request.agent, Side::Worker);
            print_report(out, market,
                         setwise_domination_from_qw_violation_m2m(market, mu, w.index,
                                                                  parse_labels(market, Side::Firm, request.set)));
        } else if (kind == "double-quasi") {
            print_report(out, market, domination_from_double_quasi_m2m(market, mu, parse_pair(market, request.pair)));
        } else {
            err << "error: unknown witness kind '" << kind
                << "' (blocking-pair, firm-block, quasi-core-pair, setwise, double-quasi)\n";
            return exit_usage;
        }
        return exit_ok;
    });
}

int cmd_gen(const GenConfig& config, int count, bool mixed, const std::string& directory, std::ostream& out,
            std::ostream& err)
{
    return guarded(err, [&] {
        if (directory.empty()) {
            if (count != 1) {
                const auto markets = mixed ? gen_mixed_corpus(config, count) : gen_corpus(config, count);
                for (std::size_t i = 0; i < markets.size(); ++i)
                    out << (i ? "\n" : "") << "# gen[" << i << "]\n" << serialize_market(markets[i]);
                return exit_ok;
            }
            out << serialize_market(gen_market(config));
            return exit_ok;
        }
        const auto markets = mixed ? gen_mixed_corpus(config, count) : gen_corpus(config, count);
        std::filesystem::create_directories(directory);
        for (std::size_t i = 0; i < markets.size(); ++i) {
            std::ostringstream name;
            name << "market-" << std::setw(4) << std::setfill('0') << i << ".market";
            const auto file = std::filesystem::path(directory) / name.str();
            std::ofstream f(file);
            if (!f)
                throw Error(ErrorCode::ConfigInvalid, "cannot write '" + file.string() + "'");
            f << serialize_market(markets[i]);
            out << file.string() << '\n';
        }
        return exit_ok;
    });
}

} // namespace matchkit
