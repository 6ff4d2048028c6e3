#include "ptring/cli.hpp"

#include <exception>
#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const ptring::cli::RunConfig cfg = ptring::cli::parse_config(args);
        return ptring::cli::run(cfg);
    } catch (const ptring::cli::HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const ptring::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
