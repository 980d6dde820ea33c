#include "rpaclone/dictionary.hpp"

#include "rpaclone/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace rpaclone {

using nlohmann::json;

namespace {

std::string fold(std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string describe(const DictionaryRule& rule, std::size_t index) {
    std::string out = "rule " + std::to_string(index) + " ('" + rule.meta_action + "')";
    return out;
}

ParseError json_parse_error(std::string_view text, std::string_view source, const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return ParseError(std::string(source), offset,
                      "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
}

}  // namespace

std::vector<std::string> validation_errors(const ActivityDictionary& dict) {
    std::vector<std::string> errors;

    // folded activity name -> (rule index, spelling) of first appearance
    std::map<std::string, std::pair<std::size_t, std::string>> activities;
    for (std::size_t i = 0; i < dict.rules.size(); ++i) {
        const auto& rule = dict.rules[i];
        if (rule.meta_action.empty()) errors.push_back("rule " + std::to_string(i) + ": empty meta action");
        if (rule.pattern.empty()) errors.push_back(describe(rule, i) + ": empty pattern");
        for (std::size_t k = 0; k < rule.pattern.size(); ++k) {
            if (rule.pattern[k].empty()) {
                errors.push_back(describe(rule, i) + ": empty activity name at pattern position " +
                                 std::to_string(k));
                continue;
            }
            activities.try_emplace(fold(rule.pattern[k]), i, rule.pattern[k]);
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (dict.rules[j] == rule) {
                errors.push_back(describe(rule, i) + ": duplicates rule " + std::to_string(j));
                break;
            }
        }
    }

    std::map<std::string, bool> reported;
    for (std::size_t i = 0; i < dict.rules.size(); ++i) {
        const auto& meta = dict.rules[i].meta_action;
        if (meta.empty() || reported[meta]) continue;
        if (const auto hit = activities.find(fold(meta)); hit != activities.end()) {
            reported[meta] = true;
            errors.push_back("meta action '" + meta + "' (rule " + std::to_string(i) +
                             ") collides with activity name '" + hit->second.second + "' (rule " +
                             std::to_string(hit->second.first) + ")");
        }
    }
    return errors;
}

void validate(const ActivityDictionary& dict) {
    auto errors = validation_errors(dict);
    if (!errors.empty()) throw ValidationError(std::move(errors));
}

std::vector<std::string> meta_actions(const ActivityDictionary& dict) {
    std::vector<std::string> out;
    for (const auto& rule : dict.rules) {
        if (std::ranges::find(out, rule.meta_action) == out.end()) out.push_back(rule.meta_action);
    }
    return out;
}

ActivityDictionary dictionary_from_json(std::string_view text, std::string_view source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw json_parse_error(text, source_name, e);
    }

    ActivityDictionary dict;
    std::vector<std::string> errors;
    if (!doc.is_object()) throw ValidationError({std::string(source_name) + ": dictionary must be a JSON object"});
    auto text_field = [&](const char* key) -> std::string {
        if (!doc.contains(key) || !doc[key].is_string()) {
            errors.push_back(std::string("missing or non-text field '") + key + "'");
            return {};
        }
        return doc[key].get<std::string>();
    };
    dict.name = text_field("name");
    dict.version = text_field("version");

    if (!doc.contains("rules") || !doc["rules"].is_array()) {
        errors.emplace_back("missing or non-list field 'rules'");
    } else {
        const auto& rules = doc["rules"];
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const auto& r = rules[i];
            DictionaryRule rule;
            if (!r.is_object() || !r.contains("meta") || !r["meta"].is_string()) {
                errors.push_back("rule " + std::to_string(i) + ": missing text field 'meta'");
            } else {
                rule.meta_action = r["meta"].get<std::string>();
            }
            if (!r.is_object() || !r.contains("pattern") || !r["pattern"].is_array()) {
                errors.push_back("rule " + std::to_string(i) + ": missing list field 'pattern'");
            } else {
                for (const auto& p : r["pattern"]) {
                    if (!p.is_string()) {
                        errors.push_back("rule " + std::to_string(i) + ": pattern entries must be text");
                        continue;
                    }
                    rule.pattern.push_back(p.get<std::string>());
                }
            }
            dict.rules.push_back(std::move(rule));
        }
    }
    auto invariant_errors = validation_errors(dict);
    errors.insert(errors.end(), invariant_errors.begin(), invariant_errors.end());
    if (!errors.empty()) {
        for (auto& e : errors) e = std::string(source_name) + ": " + e;
        throw ValidationError(std::move(errors));
    }
    return dict;
}

ActivityDictionary load_dictionary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dictionary " + path.generic_string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return dictionary_from_json(buf.str(), path.generic_string());
}

std::string dictionary_to_json(const ActivityDictionary& dict) {
    json rules = json::array();
    for (const auto& rule : dict.rules) rules.push_back({{"meta", rule.meta_action}, {"pattern", rule.pattern}});
    json doc = {{"name", dict.name}, {"version", dict.version}, {"rules", std::move(rules)}};
    return doc.dump(2) + "\n";
}

std::string_view to_string(LookupCase lookup) {
    return lookup == LookupCase::insensitive ? "insensitive" : "sensitive";
}

LookupCase lookup_case_from_string(std::string_view text) {
    if (text == "insensitive") return LookupCase::insensitive;
    if (text == "sensitive") return LookupCase::sensitive;
    throw UsageError("unknown lookup case '" + std::string(text) + "' (expected insensitive|sensitive)");
}

Normalizer::Normalizer(const ActivityDictionary& dict, LookupCase lookup) : lookup_(lookup) {
    validate(dict);
    for (const auto& rule : dict.rules) {
        CompiledRule compiled{rule.meta_action, {}};
        for (const auto& name : rule.pattern) compiled.keys.push_back(key(name));
        by_first_[compiled.keys.front()].push_back(std::move(compiled));
    }
    // Longest pattern first; stable sort keeps dictionary order among equals.
    for (auto& [first, rules] : by_first_) {
        std::ranges::stable_sort(rules, std::greater<>{}, [](const CompiledRule& r) { return r.keys.size(); });
    }
}

std::string Normalizer::key(std::string_view name) const {
    return lookup_ == LookupCase::insensitive ? fold(name) : std::string(name);
}

std::vector<std::string> Normalizer::apply(std::span<const std::string> tokens) const {
    std::vector<std::string> keys;
    keys.reserve(tokens.size());
    for (const auto& t : tokens) keys.push_back(key(t));

    std::vector<std::string> out;
    out.reserve(tokens.size());
    std::size_t i = 0;
    while (i < tokens.size()) {
        const CompiledRule* hit = nullptr;
        if (const auto bucket = by_first_.find(keys[i]); bucket != by_first_.end()) {
            for (const auto& rule : bucket->second) {
                const std::size_t len = rule.keys.size();
                if (i + len > keys.size()) continue;
                if (std::equal(rule.keys.begin(), rule.keys.end(), keys.begin() + static_cast<std::ptrdiff_t>(i))) {
                    hit = &rule;
                    break;
                }
            }
        }
        if (hit != nullptr) {
            out.push_back(hit->meta_action);
            i += hit->keys.size();
        } else {
            out.push_back(tokens[i]);
            ++i;
        }
    }
    return out;
}

MetaProcess normalize(const ActivitySequence& sequence, const ActivityDictionary& dict, LookupCase lookup) {
    std::vector<std::string> names;
    names.reserve(sequence.tokens.size());
    for (const auto& t : sequence.tokens) names.push_back(t.name());
    return {sequence.process_id, Normalizer(dict, lookup).apply(names)};
}

MetaProcess normalize(const MetaProcess& process, const ActivityDictionary& dict, LookupCase lookup) {
    return {process.process_id, Normalizer(dict, lookup).apply(process.tokens)};
}

std::vector<MetaProcess> normalize_corpus(const Corpus& corpus, const ActivityDictionary& dict,
                                          LookupCase lookup) {
    const Normalizer normalizer(dict, lookup);
    std::vector<MetaProcess> out;
    out.reserve(corpus.sequences.size());
    for (const auto& seq : corpus.sequences) {
        std::vector<std::string> names;
        names.reserve(seq.tokens.size());
        for (const auto& t : seq.tokens) names.push_back(t.name());
        out.push_back({seq.process_id, normalizer.apply(names)});
    }
    return out;
}

std::string meta_processes_to_json(const std::vector<MetaProcess>& processes) {
    json out = json::array();
    for (const auto& p : processes) out.push_back({{"process_id", p.process_id}, {"tokens", p.tokens}});
    return out.dump(2) + "\n";
}

std::vector<MetaProcess> meta_processes_from_json(std::string_view text, std::string_view source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw json_parse_error(text, source_name, e);
    }
    if (!doc.is_array()) throw SchemaError(std::string(source_name) + ": meta-process file must be a JSON list");
    std::vector<MetaProcess> out;
    try {
        for (const auto& item : doc)
            out.push_back({item.at("process_id").get<std::string>(), item.at("tokens").get<std::vector<std::string>>()});
    } catch (const json::exception& e) {
        throw SchemaError(std::string(source_name) + ": " + e.what());
    }
    std::ranges::sort(out, {}, &MetaProcess::process_id);
    return out;
}

}  // namespace rpaclone
