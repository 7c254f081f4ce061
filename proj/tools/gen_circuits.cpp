// Writes the bundled .hqc circuits from the builders.
//   gen_circuits ROOT          write ROOT/data/*.hqc and ROOT/tests/golden/hbsg2.hqc
//   gen_circuits --check ROOT  exit 1 if any file differs from the builder output

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nvhyper/protocols.hpp"

int main(int argc, char** argv) {
    bool check = false;
    std::string root;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--check")
            check = true;
        else
            root = a;
    }
    if (root.empty()) {
        std::cerr << "usage: gen_circuits [--check] ROOT\n";
        return 2;
    }

    const std::vector<std::pair<std::string, nvh::CircuitSpec>> files = {
        {"data/hbsg2.hqc", nvh::build_hbsg2()},
        {"data/hbsg3.hqc", nvh::build_hbsg3()},
        {"data/hbsa.hqc", nvh::build_hbsa()},
        {"tests/golden/hbsg2.hqc", nvh::build_hbsg2()},
    };
    int rc = 0;
    for (const auto& [rel, spec] : files) {
        const std::string path = root + "/" + rel;
        const std::string text = nvh::serialize(spec);
        if (check) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            if (!in || ss.str() != text) {
                std::cerr << path << ": stale or missing\n";
                rc = 1;
            }
            continue;
        }
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) {
            std::cerr << path << ": cannot write\n";
            rc = 1;
        }
    }
    return rc;
}
