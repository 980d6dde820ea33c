#include "rpaclone/error.hpp"

#include <sstream>

namespace rpaclone {

namespace {

std::string describe_parse(std::size_t offset, const std::string& what) {
    std::ostringstream os;
    os << "parse error at byte offset " << offset << ": " << what;
    return os.str();
}

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "dictionary validation failed";
    for (const auto& v : violations) {
        out += "\n  - ";
        out += v;
    }
    return out;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t byte_offset, const std::string& what)
    : Error(source + ": " + describe_parse(byte_offset, what)),
      source_(std::move(source)),
      byte_offset_(byte_offset),
      detail_(describe_parse(byte_offset, what)) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace rpaclone
