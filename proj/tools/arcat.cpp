#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "arcat/cli/run.hpp"

using namespace arcat;

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in module categories of bound quiver tensor categories"};
  std::string input;
  std::string field;
  std::size_t cap = 0;
  std::string out_format = "text";
  std::string verify_family = "complete";
  std::string output;
  app.add_option("input", input, "Job file")->required();
  app.add_option("--field", field, "Prime p or Q (overrides the [field] section)");
  app.add_option("--cap", cap, "Dimension cap for AR quiver exploration");
  app.add_option("--out", out_format, "Output format")->check(CLI::IsMember({"text", "dot"}));
  app.add_option("--verify-family", verify_family, "complete | supplied:<file>");
  app.add_option("--output", output, "Write output to a file instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::Success : cli::Usage;
  }

  cli::RunOptions opt;
  opt.dot = out_format == "dot";
  if (verify_family.rfind("supplied:", 0) == 0) {
    opt.family_file = verify_family.substr(9);
  } else if (verify_family != "complete") {
    std::cerr << "error: --verify-family must be 'complete' or 'supplied:<file>'\n";
    return cli::Usage;
  }
  try {
    auto job = cli::load_spec(input);
    if (opt.dot && job.command != "ar-quiver") throw ParseError("--out dot is only available for ar-quiver");
    if (cap) {
      opt.cap = cap;
    } else if (auto it = job.params.find("cap"); it != job.params.end()) {
      opt.cap = cli::detail::parse_count(it->second, 0);
    }
    std::ostringstream text;
    int code = cli::run_with_field(field.empty() ? job.field.value_or("101") : field, job, opt, text);
    if (output.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream f(output);
      if (!f) throw ParseError("cannot write '" + output + "'");
      f << text.str();
    }
    return code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return cli::Usage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return cli::Precondition;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return cli::Verification;
  }
}
