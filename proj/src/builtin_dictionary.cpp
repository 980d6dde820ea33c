#include "rpaclone/dictionary.hpp"

#include <algorithm>
#include <initializer_list>
#include <string_view>

namespace rpaclone {

namespace {

struct Row {
    std::string_view meta_action;
    // Entries containing " - " are activity sequences.
    std::initializer_list<std::string_view> activities;
};

// clang-format off
constexpr std::string_view kSequenceSeparator = " - ";

const std::initializer_list<Row> kRows = {
    {"Write in UI", {"NTypeInto", "SetToClipboard - NKeyboardShortcuts", "CVTypeIntoWithDescriptor"}},
    {"Write to Text File", {"WriteTextFile", "WordAppendText", "DocumentAppendText", "AppendLine",
                            "DocumentReplaceText", "WriteTextFile", "NTypeInto"}},
    {"Write to Spreadsheet", {"WriteCSVFile", "WriteCellX", "AppendCsvFile", "WriteRangeX", "AutoFillX",
                              "ExportExcelToCsvX", "InvokeVBAX", "CopyPasteRangeX", "AppendRangeX", "AutoFitX",
                              "FindReplaceValueX", "AppendRange", "WriteCell", "WriteRange", "ExecuteMacroX",
                              "OutputDataTable", "AddDataRow", "UpdateRowItem", "NTypeInto"}},
    {"Creation of Data Objects", {"BuildCollection<Object>", "CreateList<Object>", "BuildDataTable"}},
    {"Write to Data Objects", {"AppendItemToCollection<Object>", "AppendItemToList<Object>",
                               "UpdateListItem<Object>", "AddDataRow", "UpdateRowItem"}},
    {"SAP login OCR", {"Login", "Logon", "GoogleCloudOCR", "MicrosoftAzureComputerVisionOCR", "CjkOCR",
                       "GoogleOCR", "UiPathDocumentOCR", "UiPathScreenOCR"}},
    {"Send Mail", {"SendMail", "SendOutlookMail", "SendMailX"}},
    {"Receive Mail", {"GetPOP3MailMessages", "GetOutlookMailMessages", "GetIMAPMailMessages"}},
    {"Save Mail", {"SaveMail", "SaveOutlookMailMessage", "SaveMailX"}},
    {"User Message", {"LogMessage", "WriteLine"}},
    {"Get text", {"CVGetTextWithDescriptor", "NGetText", "GetOCRText"}},
    {"Click", {"CVClickWithDescriptor", "Nclick", "ClickOCRText"}},
    {"Hover", {"CVHoverWithDescriptor", "Nhover", "HoverOCRText"}},
    {"Highlight", {"CVHighlightWithDescriptor", "Nhighlight"}},
    {"Extract DataTable", {"CvExtractDataTableWithDescriptor", "NExtractData"}},
    {"Read File Text", {"DocumentReadText", "WordTextRead", "ReadTextFile"}},
    {"Save to clipboard", {"SetToClipboard", "CopySelectedText"}},
    {"Loop", {"ForEach<Object>", "InterruptibleWhile", "InterruptibleDoWhile", "ParallelForEach<Int32>"}},
    {"Condition", {"If", "IfElseIf", "Switch<Int32>"}},
};
// clang-format on

std::vector<std::string> split_sequence(std::string_view entry) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (auto at = entry.find(kSequenceSeparator); at != std::string_view::npos;
         at = entry.find(kSequenceSeparator, start)) {
        parts.emplace_back(entry.substr(start, at - start));
        start = at + kSequenceSeparator.size();
    }
    parts.emplace_back(entry.substr(start));
    return parts;
}

ActivityDictionary build() {
    ActivityDictionary dict;
    dict.name = "uipath-builtin";
    dict.version = "1";
    for (const auto& row : kRows) {
        for (const auto entry : row.activities) {
            DictionaryRule rule{std::string(row.meta_action), split_sequence(entry)};
            // The source table lists WriteTextFile twice in one row.
            if (std::ranges::find(dict.rules, rule) == dict.rules.end()) dict.rules.push_back(std::move(rule));
        }
    }
    return dict;
}

}  // namespace

const ActivityDictionary& builtin_dictionary() {
    static const ActivityDictionary dict = build();
    return dict;
}

}  // namespace rpaclone
