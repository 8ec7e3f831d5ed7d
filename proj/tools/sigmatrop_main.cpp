#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sigmatrop/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sigmatrop: tropical Sigma invariants, push dynamics and hyperbolic checks"};
  std::string job_path, out_path, plot_dir;
  int threads = 0, escalation = 0;
  app.add_option("--job", job_path, "job document (JSON); - reads stdin")->required();
  app.add_option("--out", out_path, "result document path (default: stdout)");
  app.add_option("--plot", plot_dir, "directory for CSV plot data");
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--bound-escalation", escalation, "largest certificate-search box to escalate to")
      ->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  std::stringstream buf;
  if (job_path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(job_path);
    if (!in) {
      std::cerr << "sigmatrop: cannot read " << job_path << "\n";
      return sigmatrop::cli::kError;
    }
    buf << in.rdbuf();
  }

  sigmatrop::set_thread_count(threads);
  sigmatrop::cli::RunOptions opt;
  opt.bound_escalation = escalation;
  opt.exec = threads == 1 ? sigmatrop::Exec::Serial : sigmatrop::Exec::Parallel;
  const auto outcome = sigmatrop::cli::run_text(buf.str(), opt);
  const std::string text = sigmatrop::cli::dump(outcome.document);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "sigmatrop: cannot write " << out_path << "\n";
      return sigmatrop::cli::kError;
    }
  }

  if (!plot_dir.empty() && outcome.exit_code != sigmatrop::cli::kSchema && outcome.document.contains("result")) {
    try {
      for (const auto& p : sigmatrop::cli::emit_plot_data(outcome.document, plot_dir)) std::cerr << "wrote " << p << "\n";
    } catch (const std::exception& e) {
      std::cerr << "sigmatrop: plot: " << e.what() << "\n";
      return sigmatrop::cli::kError;
    }
  }
  if (outcome.exit_code == sigmatrop::cli::kSchema || outcome.exit_code == sigmatrop::cli::kError) {
    const auto& err = outcome.document.value("error", sigmatrop::cli::Json::object());
    if (!err.empty()) std::cerr << "sigmatrop: " << err.value("kind", "") << ": " << err.value("message", "") << "\n";
  }
  return outcome.exit_code;
}
