#include "matchkit/market_file.hpp"

#include "matchkit/error.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace matchkit {

namespace {

struct Line
{
    int number = 0;
    std::string text;
    bool indented = false;
};

// Cursor over one line; columns are 1-based.
class Scanner
{
public:
    explicit Scanner(const Line& line) : line_(line) {}

    void skip_space()
    {
        while (pos_ < line_.text.size() && std::isspace(static_cast<unsigned char>(line_.text[pos_])))
            ++pos_;
    }

    bool at_end()
    {
        skip_space();
        return pos_ >= line_.text.size();
    }

    bool accept(std::string_view token)
    {
        skip_space();
        if (line_.text.compare(pos_, token.size(), token) == 0) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token)
    {
        if (!accept(token))
            fail("expected '" + std::string(token) + "'");
    }

    std::string word()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < line_.text.size()) {
            const char c = line_.text[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}' || c == ':' || c == '>'
                || c == ';')
                break;
            ++pos_;
        }
        if (pos_ == start)
            fail("expected a name");
        return line_.text.substr(start, pos_ - start);
    }

    int column() const { return static_cast<int>(pos_) + 1; }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(line_.number, column(), what); }
    [[noreturn]] void fail_at(int column, const std::string& what) const
    {
        throw SyntaxError(line_.number, column, what);
    }

private:
    const Line& line_;
    std::size_t pos_ = 0;
};

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> lines;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        std::string raw(text.substr(start, end - start));
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        if (raw.find_first_not_of(" \t") != std::string::npos)
            lines.push_back({number, raw, raw[0] == ' ' || raw[0] == '\t'});
        start = end + 1;
    }
    return lines;
}

SubsetMask read_set(Scanner& in, const std::vector<std::string>& roster)
{
    in.expect("{");
    SubsetMask set = 0;
    while (!in.accept("}")) {
        if (in.at_end())
            in.fail("unterminated set");
        const int col = in.column();
        const std::string name = in.word();
        int index = -1;
        for (std::size_t i = 0; i < roster.size(); ++i)
            if (roster[i] == name)
                index = static_cast<int>(i);
        if (index < 0)
            in.fail_at(col, "'" + name + "' is not on the opposite side");
        if (bits::contains(set, index))
            in.fail_at(col, "'" + name + "' repeated in set");
        set |= bits::single(index);
    }
    return set;
}

std::vector<std::string> read_roster(Scanner& in)
{
    std::vector<std::string> names;
    while (!in.at_end())
        names.push_back(in.word());
    return names;
}

} // namespace

Market parse_market(std::string_view text)
{
    const std::vector<Line> lines = split_lines(text);
    std::size_t i = 0;
    auto need_line = [&](const char* what) -> const Line& {
        if (i >= lines.size()) {
            const int last = lines.empty() ? 1 : lines.back().number + 1;
            throw SyntaxError(last, 1, std::string("expected ") + what);
        }
        return lines[i];
    };

    Mode mode = Mode::ManyToOne;
    {
        const Line& line = need_line("market header");
        Scanner in(line);
        in.expect("market");
        const int col = in.column() + 1;
        const std::string kind = in.word();
        if (kind == "many-to-one")
            mode = Mode::ManyToOne;
        else if (kind == "many-to-many")
            mode = Mode::ManyToMany;
        else
            in.fail_at(col, "market kind must be many-to-one or many-to-many");
        if (!in.at_end())
            in.fail("unexpected text after market kind");
        ++i;
    }

    std::vector<std::string> firms, workers;
    {
        Scanner in(need_line("firms line"));
        in.expect("firms");
        in.expect(":");
        firms = read_roster(in);
        ++i;
    }
    {
        Scanner in(need_line("workers line"));
        in.expect("workers");
        in.expect(":");
        workers = read_roster(in);
        ++i;
    }

    ChoiceData data;
    std::set<std::string> declared;
    while (i < lines.size()) {
        const Line& line = lines[i];
        Scanner in(line);
        if (line.indented)
            in.fail("indented line outside a choice block");
        const bool is_pref = in.accept("pref");
        if (!is_pref && !in.accept("choice"))
            in.fail("expected 'pref' or 'choice'");
        const int name_col = in.column() + 1;
        const std::string owner = in.word();
        in.expect(":");

        const bool owner_is_firm = std::find(firms.begin(), firms.end(), owner) != firms.end();
        const bool owner_is_worker = std::find(workers.begin(), workers.end(), owner) != workers.end();
        if (!owner_is_firm && !owner_is_worker)
            in.fail_at(name_col, "unknown agent '" + owner + "'");
        if (!declared.insert(owner).second)
            in.fail_at(name_col, "second preference block for '" + owner + "'");
        const std::vector<std::string>& opposite = owner_is_firm ? workers : firms;

        if (is_pref) {
            RankingEntry entry;
            entry.ranking.push_back(read_set(in, opposite));
            while (in.accept(">"))
                entry.ranking.push_back(read_set(in, opposite));
            if (!in.at_end())
                in.fail("expected '>' or end of line");
            data[owner] = std::move(entry);
            ++i;
            continue;
        }

        if (!in.at_end())
            in.fail("choice table rows go on the following indented lines");
        ++i;
        if (opposite.size() > static_cast<std::size_t>(max_side_size))
            in.fail("opposite side too large for a choice table");
        const std::size_t entries = std::size_t{1} << opposite.size();
        std::vector<SubsetMask> table(entries, 0);
        std::vector<bool> seen(entries, false);
        std::size_t rows = 0;
        while (i < lines.size() && lines[i].indented) {
            Scanner row(lines[i]);
            const int col = row.column();
            const SubsetMask arg = read_set(row, opposite);
            row.expect("->");
            const SubsetMask chosen = read_set(row, opposite);
            if (!row.at_end())
                row.fail("unexpected text after choice row");
            if (seen[arg])
                row.fail_at(col, "subset listed twice in choice table");
            seen[arg] = true;
            table[arg] = chosen;
            ++rows;
            ++i;
        }
        if (rows != entries)
            throw SyntaxError(line.number, 1,
                              "choice table for '" + owner + "' lists " + std::to_string(rows) + " of "
                                  + std::to_string(entries) + " subsets");
        data[owner] = TableEntry{std::move(table)};
    }

    return make_market(std::move(firms), std::move(workers), mode, data);
}

std::string format_set(const Market& market, Side side, SubsetMask set)
{
    std::string out = "{";
    bool first = true;
    for (int i : bits::members(set)) {
        if (!first)
            out += ' ';
        out += market.label(AgentId{side, i});
        first = false;
    }
    return out + "}";
}

std::string format_coalition(const Market& market, CoalitionMask coalition)
{
    std::string out = "{";
    bool first = true;
    for (int bit : bits::members(coalition)) {
        if (!first)
            out += ' ';
        out += market.label(market.agent_at_bit(bit));
        first = false;
    }
    return out + "}";
}

std::string serialize_market(const Market& market)
{
    std::ostringstream out;
    out << "market " << to_string(market.mode()) << '\n';
    out << "firms:";
    for (const auto& f : market.firm_labels())
        out << ' ' << f;
    out << "\nworkers:";
    for (const auto& w : market.worker_labels())
        out << ' ' << w;
    out << '\n';

    auto emit = [&](AgentId id) {
        const Side opposite_side = opposite(id.side);
        const auto& pref = market.declared_preference(id);
        if (pref) {
            out << "pref " << market.label(id) << ':';
            bool first = true;
            for (SubsetMask s : pref->ranking()) {
                out << (first ? " " : " > ") << format_set(market, opposite_side, s);
                first = false;
            }
            out << '\n';
            return;
        }
        out << "choice " << market.label(id) << ":\n";
        const auto& table = market.choice(id).table();
        for (std::size_t t = 0; t < table.size(); ++t)
            out << "  " << format_set(market, opposite_side, static_cast<SubsetMask>(t)) << " -> "
                << format_set(market, opposite_side, table[t]) << '\n';
    };
    for (int f = 0; f < market.n_firms(); ++f)
        emit(firm(f));
    for (int w = 0; w < market.n_workers(); ++w)
        emit(worker(w));
    return out.str();
}

Market load_market(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::SyntaxError, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_market(buffer.str());
}

Matching parse_matching(const Market& market, std::string_view spec)
{
    std::vector<std::pair<AgentId, AgentId>> pairs;
    std::string text(spec);
    if (text.find_first_not_of(" \t") == std::string::npos || text == "{}")
        return make_matching(market, pairs);

    Line line{1, text, false};
    Scanner in(line);
    while (!in.at_end()) {
        const int col = in.column() + 1;
        const std::string key = in.word();
        auto id = market.find(key);
        if (!id)
            in.fail_at(col, "unknown agent '" + key + "'");
        in.expect(":");
        while (!in.at_end() && !in.accept(";")) {
            const int pcol = in.column() + 1;
            const std::string name = in.word();
            auto partner = market.find(name);
            if (!partner || partner->side == id->side)
                in.fail_at(pcol, "'" + name + "' is not on the opposite side of '" + key + "'");
            if (id->side == Side::Firm)
                pairs.emplace_back(*id, *partner);
            else
                pairs.emplace_back(*partner, *id);
        }
    }
    return make_matching(market, pairs);
}

namespace {

std::string format_by(const Market& market, const Matching& mu, Side side)
{
    std::string out;
    for (int i = 0; i < market.side_size(side); ++i) {
        const AgentId a{side, i};
        const SubsetMask partners = mu.partners(a);
        if (partners == 0)
            continue;
        if (!out.empty())
            out += "; ";
        out += market.label(a) + ":";
        for (int j : bits::members(partners))
            out += (out.back() == ':' ? "" : " ") + market.label(AgentId{opposite(side), j});
    }
    return out.empty() ? "{}" : out;
}

} // namespace

std::string format_matching(const Market& market, const Matching& mu)
{
    return format_by(market, mu, Side::Firm);
}

std::string format_matching_by_worker(const Market& market, const Matching& mu)
{
    return format_by(market, mu, Side::Worker);
}

} // namespace matchkit
