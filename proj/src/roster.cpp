#include "electsent/roster.hpp"

#include <fstream>
#include <map>
#include <set>

#include "electsent/util.hpp"

namespace electsent {

std::string party_name(Party party) {
    return party == Party::Democratic ? "Democratic" : "Republican";
}

std::optional<Party> parse_party(std::string_view name) {
    std::string lowered = ascii_lower(trim(name));
    if (lowered == "democratic") return Party::Democratic;
    if (lowered == "republican") return Party::Republican;
    return std::nullopt;
}

const Candidate* CandidateRoster::find(std::string_view canonical_name) const {
    for (const Candidate& c : entries) {
        if (c.canonical_name == canonical_name) return &c;
    }
    return nullptr;
}

std::vector<std::string> CandidateRoster::canonical_names() const {
    std::vector<std::string> names;
    names.reserve(entries.size());
    for (const Candidate& c : entries) names.push_back(c.canonical_name);
    return names;
}

std::vector<std::string> CandidateRoster::party_members(Party party) const {
    std::vector<std::string> names;
    for (const Candidate& c : entries) {
        if (c.party == party) names.push_back(c.canonical_name);
    }
    return names;
}

CandidateRoster default_roster() {
    auto c = [](const char* name, Party party, std::vector<std::string> aliases) {
        return Candidate{name, party, std::move(aliases)};
    };
    CandidateRoster roster;
    roster.entries = {
        c("Clinton", Party::Democratic,
          {"clinton", "hillary clinton", "hillaryclinton", "@hillaryclinton"}),
        c("O'Malley", Party::Democratic,
          {"o'malley", "omalley", "martin o'malley", "martinomalley", "@martinomalley"}),
        c("Sanders", Party::Democratic,
          {"sanders", "bernie sanders", "berniesanders", "@berniesanders"}),
        c("Bush", Party::Republican, {"bush", "jeb bush", "jebbush", "@jebbush"}),
        c("Carson", Party::Republican,
          {"carson", "ben carson", "bencarson", "@realbencarson"}),
        c("Christie", Party::Republican,
          {"christie", "chris christie", "chrischristie", "@govchristie"}),
        c("Cruz", Party::Republican, {"cruz", "ted cruz", "tedcruz", "@tedcruz"}),
        c("Fiorina", Party::Republican,
          {"fiorina", "carly fiorina", "carlyfiorina", "@carlyfiorina"}),
        c("Gilmore", Party::Republican,
          {"gilmore", "jim gilmore", "jimgilmore", "@gov_gilmore"}),
        c("Huckabee", Party::Republican,
          {"huckabee", "mike huckabee", "mikehuckabee", "@govmikehuckabee"}),
        c("Kasich", Party::Republican,
          {"kasich", "john kasich", "johnkasich", "@johnkasich"}),
        c("Paul", Party::Republican, {"paul", "rand paul", "randpaul", "@randpaul"}),
        c("Rubio", Party::Republican,
          {"rubio", "marco rubio", "marcorubio", "@marcorubio"}),
        c("Santorum", Party::Republican,
          {"santorum", "rick santorum", "ricksantorum", "@ricksantorum"}),
        c("Trump", Party::Republican,
          {"trump", "donald trump", "donaldtrump", "@realdonaldtrump"}),
    };
    return roster;
}

namespace {

void validate(const CandidateRoster& roster) {
    std::map<std::string, std::string> alias_owner;
    std::set<std::string> names;
    for (const Candidate& c : roster.entries) {
        if (c.canonical_name.empty()) throw InputError("roster: blank candidate name");
        if (!names.insert(c.canonical_name).second)
            throw InputError("roster: duplicate candidate " + c.canonical_name);
        if (c.aliases.empty())
            throw InputError("roster: candidate " + c.canonical_name + " has no aliases");
        for (const std::string& alias : c.aliases) {
            if (alias.empty())
                throw InputError("roster: blank alias for " + c.canonical_name);
            auto [it, inserted] = alias_owner.emplace(alias, c.canonical_name);
            if (!inserted && it->second != c.canonical_name)
                throw InputError("roster: alias '" + alias + "' is shared by " + it->second +
                                 " and " + c.canonical_name);
        }
    }
}

}  // namespace

CandidateRoster load_roster_csv(std::istream& in) {
    CandidateRoster roster;
    auto rows = read_csv(in);
    bool first = true;
    for (const auto& row : rows) {
        if (first) {
            first = false;
            if (!row.empty() && ascii_lower(row[0]) == "canonical_name") continue;
        }
        if (row.size() != 3)
            throw InputError("roster: expected 3 columns, got " + std::to_string(row.size()));
        std::string name = trim(row[0]);
        auto party = parse_party(row[1]);
        if (!party) throw InputError("roster: unknown party '" + row[1] + "' for " + name);
        std::string alias = ascii_lower(trim(row[2]));
        Candidate* entry = nullptr;
        for (Candidate& c : roster.entries) {
            if (c.canonical_name == name) {
                entry = &c;
                break;
            }
        }
        if (entry == nullptr) {
            roster.entries.push_back({name, *party, {}});
            entry = &roster.entries.back();
        } else if (entry->party != *party) {
            throw InputError("roster: conflicting party for " + name);
        }
        bool seen = false;
        for (const std::string& a : entry->aliases) seen = seen || a == alias;
        if (!seen) entry->aliases.push_back(alias);
    }
    validate(roster);
    return roster;
}

CandidateRoster load_roster_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open roster file: " + path.string());
    return load_roster_csv(in);
}

void write_roster_csv(std::ostream& out, const CandidateRoster& roster) {
    write_csv_row(out, {"canonical_name", "party", "alias"});
    for (const Candidate& c : roster.entries) {
        for (const std::string& alias : c.aliases) {
            write_csv_row(out, {c.canonical_name, party_name(c.party), alias});
        }
    }
}

}  // namespace electsent
