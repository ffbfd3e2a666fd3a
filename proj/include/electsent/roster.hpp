#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace electsent {

enum class Party { Democratic, Republican };

std::string party_name(Party party);
std::optional<Party> parse_party(std::string_view name);

struct Candidate {
    std::string canonical_name;
    Party party = Party::Democratic;
    std::vector<std::string> aliases;  // lowercase match strings
};

/// The candidate list plus the alias strings used for mention detection.
/// Shipped as editable CSV data; `default_roster()` is the 2016 primary field
/// this project reproduces (3 Democratic, 12 Republican candidates).
struct CandidateRoster {
    std::vector<Candidate> entries;

    const Candidate* find(std::string_view canonical_name) const;
    std::vector<std::string> canonical_names() const;
    std::vector<std::string> party_members(Party party) const;
};

CandidateRoster default_roster();

/// CSV columns: canonical_name, party, alias (one alias per row). Rows for
/// the same candidate accumulate aliases. Throws InputError on inconsistent
/// party labels, blank aliases, or an alias shared between two candidates.
CandidateRoster load_roster_csv(std::istream& in);
CandidateRoster load_roster_csv(const std::filesystem::path& path);
void write_roster_csv(std::ostream& out, const CandidateRoster& roster);

}  // namespace electsent
