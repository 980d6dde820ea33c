#pragma once

#include "rpaclone/ingest.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rpaclone {

/// Rewrites one activity (pattern of length 1) or a run of activities
/// (pattern of length >= 2) into a single meta action.
struct DictionaryRule {
    std::string meta_action;
    std::vector<std::string> pattern;

    friend bool operator==(const DictionaryRule&, const DictionaryRule&) = default;
};

/// Ordered equivalence table. Rule order breaks ties between patterns of
/// equal length, so it is preserved exactly as loaded.
struct ActivityDictionary {
    std::string name;
    std::string version;
    std::vector<DictionaryRule> rules;

    friend bool operator==(const ActivityDictionary&, const ActivityDictionary&) = default;
};

/// Returns every invariant the dictionary violates; empty means valid.
/// Meta action / activity name collisions are detected case-insensitively.
std::vector<std::string> validation_errors(const ActivityDictionary& dict);

/// Throws ValidationError listing every violation.
void validate(const ActivityDictionary& dict);

/// The UiPath equivalence table: 19 meta actions, one sequence rule.
const ActivityDictionary& builtin_dictionary();

ActivityDictionary dictionary_from_json(std::string_view text, std::string_view source_name = "<dictionary>");
ActivityDictionary load_dictionary(const std::filesystem::path& path);
std::string dictionary_to_json(const ActivityDictionary& dict);

/// Distinct meta actions in first-appearance order.
std::vector<std::string> meta_actions(const ActivityDictionary& dict);

enum class LookupCase { insensitive, sensitive };

std::string_view to_string(LookupCase lookup);
LookupCase lookup_case_from_string(std::string_view text);

struct MetaProcess {
    std::string process_id;
    std::vector<std::string> tokens;

    friend bool operator==(const MetaProcess&, const MetaProcess&) = default;
};

/// Precompiled, immutable view of a validated dictionary. Rules are bucketed
/// by their first activity and ordered (pattern length desc, dictionary order asc).
class Normalizer {
public:
    explicit Normalizer(const ActivityDictionary& dict, LookupCase lookup = LookupCase::insensitive);

    std::vector<std::string> apply(std::span<const std::string> tokens) const;

    LookupCase lookup() const noexcept { return lookup_; }

private:
    struct CompiledRule {
        std::string meta_action;
        std::vector<std::string> keys;
    };

    std::string key(std::string_view name) const;

    LookupCase lookup_;
    std::unordered_map<std::string, std::vector<CompiledRule>> by_first_;
};

MetaProcess normalize(const ActivitySequence& sequence, const ActivityDictionary& dict,
                      LookupCase lookup = LookupCase::insensitive);

std::vector<MetaProcess> normalize_corpus(const Corpus& corpus, const ActivityDictionary& dict,
                                          LookupCase lookup = LookupCase::insensitive);

/// Re-applies the dictionary to meta tokens (used for idempotence checks).
MetaProcess normalize(const MetaProcess& process, const ActivityDictionary& dict,
                      LookupCase lookup = LookupCase::insensitive);

// Staging file: JSON list of {process_id, tokens}
std::string meta_processes_to_json(const std::vector<MetaProcess>& processes);
std::vector<MetaProcess> meta_processes_from_json(std::string_view text, std::string_view source_name = "<meta>");

}  // namespace rpaclone
