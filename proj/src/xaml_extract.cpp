#include "rpaclone/error.hpp"
#include "rpaclone/ingest.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>

namespace rpaclone {

namespace {

constexpr std::string_view kUiPathActivitiesUri = "http://schemas.uipath.com/workflow/activities";
// Modern UI automation activities (NClick, NTypeInto, ...) live here.
constexpr std::string_view kUiPathUixUri = "http://schemas.uipath.com/workflow/activities/uix";

struct QName {
    std::string_view prefix;
    std::string_view local;
};

QName split_qname(std::string_view name) {
    const auto colon = name.find(':');
    if (colon == std::string_view::npos) return {{}, name};
    return {name.substr(0, colon), name.substr(colon + 1)};
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

// "x:String, scg:List(x:Int32)" -> "String,List(Int32)"
std::string render_type_arguments(std::string_view raw) {
    std::string out;
    std::size_t i = 0;
    while (i < raw.size()) {
        const char c = raw[i];
        if (c == ':' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (is_name_char(c)) {
            std::size_t j = i;
            while (j < raw.size() && is_name_char(raw[j])) ++j;
            if (j < raw.size() && raw[j] == ':') {
                i = j + 1;  // drop the namespace prefix
                continue;
            }
            out.append(raw.substr(i, j - i));
            i = j;
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

class Extractor {
public:
    explicit Extractor(const ExtractionConfig& config) : config_(config) {}

    void start(const XML_Char* name, const XML_Char** attrs) {
        std::map<std::string, std::string> scope;
        const XML_Char* type_arguments = nullptr;
        for (const XML_Char** a = attrs; *a != nullptr; a += 2) {
            const std::string_view attr = a[0];
            if (attr == "xmlns") {
                scope.emplace("", a[1]);
            } else if (attr.starts_with("xmlns:")) {
                scope.emplace(std::string(attr.substr(6)), a[1]);
            } else if (split_qname(attr).local == "TypeArguments") {
                type_arguments = a[1];
            }
        }
        scopes_.push_back(std::move(scope));

        const QName qname = split_qname(name);
        if (!is_activity(qname)) return;

        std::string token(qname.local);
        if (type_arguments != nullptr) {
            const std::string args = render_type_arguments(type_arguments);
            if (!args.empty()) token += "<" + args + ">";
        }
        tokens_.emplace_back(std::move(token));
    }

    void end() { scopes_.pop_back(); }

    std::vector<Token> take_tokens() { return std::move(tokens_); }

private:
    std::string_view resolve(std::string_view prefix) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            const auto found = it->find(std::string(prefix));
            if (found != it->end()) return found->second;
        }
        return {};
    }

    bool is_activity(const QName& qname) const {
        // Property elements such as <ui:ReadRange.Range> carry a dot.
        if (qname.local.empty() || qname.local.find_first_of(".:") != std::string_view::npos) return false;
        const std::string local(qname.local);
        if (config_.structural_tags.contains(local)) return false;
        if (qname.prefix.empty()) return config_.core_activities.contains(local);
        if (config_.namespace_prefixes.contains(std::string(qname.prefix))) return true;
        const std::string_view uri = resolve(qname.prefix);
        return !uri.empty() && config_.namespace_uris.contains(std::string(uri));
    }

    const ExtractionConfig& config_;
    std::vector<std::map<std::string, std::string>> scopes_;
    std::vector<Token> tokens_;
};

struct ParserDeleter {
    void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

ExtractionConfig ExtractionConfig::defaults() {
    ExtractionConfig config;
    config.namespace_prefixes = {"ui"};
    config.namespace_uris = {std::string(kUiPathActivitiesUri), std::string(kUiPathUixUri)};
    config.core_activities = {
        "If",          "IfElseIf", "Switch",   "ForEach",   "InterruptibleWhile",
        "InterruptibleDoWhile",    "ParallelForEach",       "WriteLine",
        "LogMessage",  "AppendLine", "While",  "DoWhile",   "Assign",
        "Delay",       "TryCatch", "Throw",    "Rethrow",   "InvokeMethod",
    };
    config.structural_tags = {
        "Activity",    "Sequence",   "Variables", "Variable",  "ViewState",
        "Annotation",  "Members",    "Property",  "TextExpression",
        "Flowchart",   "FlowStep",   "FlowDecision", "FlowSwitch",
        "StateMachine", "State",     "Transition", "ActivityAction",
        "DelegateInArgument", "Catch", "WorkflowViewStateService",
        // target and cursor descriptors nested inside UI activities
        "Target",      "TargetAnchorable", "TargetApp", "CursorPosition",
    };
    return config;
}

Extraction extract_activities(std::string_view xaml_document, const ExtractionConfig& config,
                              std::string_view source_name) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) throw Error("unable to allocate XML parser");

    Extractor extractor(config);
    XML_SetUserData(parser.get(), &extractor);
    XML_SetElementHandler(
        parser.get(),
        [](void* self, const XML_Char* name, const XML_Char** attrs) {
            static_cast<Extractor*>(self)->start(name, attrs);
        },
        [](void* self, const XML_Char*) { static_cast<Extractor*>(self)->end(); });

    constexpr std::size_t kChunk = 1u << 20;
    std::size_t pos = 0;
    do {
        const std::size_t len = std::min(kChunk, xaml_document.size() - pos);
        const bool final = pos + len == xaml_document.size();
        if (XML_Parse(parser.get(), xaml_document.data() + pos, static_cast<int>(len), final) ==
            XML_STATUS_ERROR) {
            const auto index = XML_GetCurrentByteIndex(parser.get());
            throw ParseError(std::string(source_name), index < 0 ? 0 : static_cast<std::size_t>(index),
                             XML_ErrorString(XML_GetErrorCode(parser.get())));
        }
        pos += len;
    } while (pos < xaml_document.size());

    Extraction result;
    result.tokens = extractor.take_tokens();
    result.empty_warning = result.tokens.empty();
    return result;
}

}  // namespace rpaclone
