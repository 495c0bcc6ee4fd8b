#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "betahull/driver.hpp"
#include "betahull/errors.hpp"

namespace {

constexpr int kInputExit = 2;
constexpr int kResourceExit = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-hull and Grassmannian invariants of monopole-class configurations"};
  app.set_version_flag("--version", "betahull 0.3.0");

  std::string command;
  std::string input = "-";
  std::string format = "text";
  betahull::RunFlags flags;

  app.add_option("command", command, "beta | alpha | bounds | oracle | report")
      ->required()
      ->check(CLI::IsMember({"beta", "alpha", "bounds", "oracle", "report"}));
  app.add_option("input", input, "input document, or - for stdin");
  app.add_option("--mode", flags.mode, "invariants for report/bounds")->check(CLI::IsMember({"beta", "alpha", "both"}));
  app.add_option("--samples", flags.samples, "Monte-Carlo samples (default 100000)");
  app.add_option("--seed", flags.seed, "seed for all randomized steps (default 0)");
  app.add_option("--starts", flags.starts, "alpha^2 multi-start count (default 20)");
  app.add_option("--cap", flags.cap, "exact-mode cap: generators (zonotope, 14) or vertices (explicit, 12)");
  app.add_option("--tol", flags.tol, "alpha^2 convergence tolerance (default 1e-8)");
  app.add_flag("--exact-only", flags.exact_only, "fail with exit 3 instead of falling back to heuristics");
  app.add_flag("--allow-asymmetric", flags.allow_asymmetric, "add missing negatives instead of rejecting the input");
  app.add_flag("--timing", flags.timing, "include wall-clock timings (machine output is then not reproducible)");
  app.add_option("--format", format, "text | machine")->check(CLI::IsMember({"text", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputExit;
  }

  try {
    const betahull::ParseOptions parse{flags.allow_asymmetric};
    betahull::InputDocument doc;
    if (input == "-") {
      std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
      doc = betahull::parse_input_text(text, parse);
    } else {
      doc = betahull::parse_input_file(input, parse);
    }
    const betahull::RunOutput out = betahull::run(betahull::parse_command(command), doc, flags);
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << (format == "machine" ? out.machine : out.text);
    return 0;
  } catch (const betahull::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceExit;
  } catch (const betahull::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputExit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
