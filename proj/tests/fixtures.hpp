#pragma once

// Helpers that write throwaway workflow corpora for tests.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace rpaclone::testing {

/// Temporary directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() / ("rpaclone-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
}

/// A UiPath-style workflow whose `ui:` activities appear in the given order,
/// nested a little (every third activity sits in its own Sequence) to
/// exercise flattening.
inline std::string workflow_xaml(const std::vector<std::string>& activities) {
    std::string body;
    for (std::size_t i = 0; i < activities.size(); ++i) {
        const std::string element = "<ui:" + activities[i] + " DisplayName=\"Step " + std::to_string(i) + "\" />";
        if (i % 3 == 2) {
            body += "      <Sequence DisplayName=\"Group\">\n        <Sequence.Variables />\n        " + element +
                    "\n      </Sequence>\n";
        } else {
            body += "      " + element + "\n";
        }
    }
    return R"(<Activity mc:Ignorable="sap sap2010" x:Class="Main"
  xmlns="http://schemas.microsoft.com/netfx/2009/xaml/activities"
  xmlns:mc="http://schemas.openxmlformats.org/markup-compatibility/2006"
  xmlns:sap2010="http://schemas.microsoft.com/netfx/2010/xaml/activities/presentation"
  xmlns:ui="http://schemas.uipath.com/workflow/activities"
  xmlns:x="http://schemas.microsoft.com/winfx/2006/xaml">
  <Sequence DisplayName="Main Sequence">
    <Sequence.Variables>
      <Variable x:TypeArguments="x:String" Name="buffer" />
    </Sequence.Variables>
    <Sequence DisplayName="Body">
)" + body + R"(    </Sequence>
  </Sequence>
</Activity>
)";
}

}  // namespace rpaclone::testing
