// rpaclone: find shared activity blocks across RPA workflows.
//
//   rpaclone scan ./workflows > corpus.json
//   rpaclone normalize corpus.json > meta.json
//   rpaclone match meta.json --format json
//   rpaclone report ./workflows --min-length 4 --format text

#include "rpaclone/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return rpaclone::cli::main_entry(args, std::cout, std::cerr);
}
