#include "bundlecalc/cli.hpp"

#include <iostream>
#include <iterator>
#include <string>
#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::optional<std::string> stdin_doc;
    if (std::find(args.begin(), args.end(), "-") != args.end() && !isatty(STDIN_FILENO))
        stdin_doc = std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());

    const auto result = bundlecalc::cli::run(args, stdin_doc);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
