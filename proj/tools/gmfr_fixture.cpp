// Writes the moment-matched demo universe used by the README and the acceptance suite.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmfr/fixture.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Write moment-matched fixture price files"};
    std::string out = "fixture";
    std::size_t months = 60;
    std::uint64_t seed = 20000131;
    app.add_option("--out", out, "Output directory")->default_val("fixture");
    app.add_option("--months", months, "Number of monthly returns")->default_val(60)->check(CLI::Range(3, 100000));
    app.add_option("--seed", seed, "Random seed")->default_val(20000131);
    CLI11_PARSE(app, argc, argv);

    try {
        const auto files = gmfr::write_fixture(out, months, seed);
        std::cout << files.index.string() << '\n';
        for (const auto& a : files.assets) std::cout << a.string() << '\n';
        std::cout << files.zero_risk_free.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "gmfr-fixture: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
