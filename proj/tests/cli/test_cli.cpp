// End-to-end checks of the command-line surface. argv[1] carries the path to
// the stsense binary (wired through ctest).
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

int failures = 0;

#define CHECK_MSG(cond, msg)                                                        \
  do {                                                                              \
    if (!(cond)) {                                                                  \
      std::cerr << "FAIL (" << __LINE__ << "): " << msg << "\n";                    \
      ++failures;                                                                   \
    }                                                                               \
  } while (0)

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& cmd) {
  const std::string out_path = "/tmp/stsense_cli_out.txt";
  const std::string err_path = "/tmp/stsense_cli_err.txt";
  const int status = std::system((cmd + " >" + out_path + " 2>" + err_path).c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

double first_value(const std::string& text) { return std::strtod(text.c_str(), nullptr); }

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) return -1e308;
  return std::strtod(text.c_str() + pos + key.size(), nullptr);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-stsense>\n";
    return 2;
  }
  const std::string bin = argv[1];

  // threshold: median of the exact K=2, N=4 law
  {
    const RunResult r = run(bin + " threshold --k 2 --n 4 --pfa 0.5");
    CHECK_MSG(r.exit_code == 0, "threshold exit code " << r.exit_code);
    CHECK_MSG(std::abs(first_value(r.out) - 0.693052744228799) <= 1e-9,
              "threshold value " << r.out);
    CHECK_MSG(r.out.find("0.693052744229") != std::string::npos,
              "12 significant digits expected, got " << r.out);
  }

  // invalid pfa names the violated precondition and exits 2
  {
    const RunResult r = run(bin + " threshold --k 2 --n 4 --pfa 0");
    CHECK_MSG(r.exit_code == 2, "bad pfa exit code " << r.exit_code);
    CHECK_MSG(r.err.find("pfa must lie in (0,1)") != std::string::npos,
              "bad pfa message: " << r.err);
  }

  // threshold -> pfa round trip
  {
    const RunResult th = run(bin + " threshold --k 4 --n 100 --pfa 0.01");
    const double zeta = first_value(th.out);
    std::ostringstream cmd;
    cmd.precision(17);
    cmd << bin << " pfa --k 4 --n 100 --zeta " << zeta;
    const RunResult pf = run(cmd.str());
    CHECK_MSG(pf.exit_code == 0, "pfa exit code " << pf.exit_code);
    CHECK_MSG(std::abs(first_value(pf.out) - 0.01) <= 1e-10, "round trip " << pf.out);
  }

  // moments: H0 values and matched parameters
  {
    const RunResult r = run(bin + " moments --k 2 --n 4");
    CHECK_MSG(r.exit_code == 0, "moments exit " << r.exit_code);
    CHECK_MSG(r.out.find("M1 = 0.6666666667") != std::string::npos, "M1 line: " << r.out);
    CHECK_MSG(std::abs(value_after(r.out, "alpha = ") - 3.0) <= 1e-9, "alpha: " << r.out);
    CHECK_MSG(std::abs(value_after(r.out, "beta = ") - 1.5) <= 1e-9, "beta: " << r.out);
  }
  {
    const RunResult r = run(bin + " moments --k 4 --n 400");
    CHECK_MSG(std::abs(value_after(r.out, "alpha = ") - 395.4) <= 0.05, "alpha(4,400): " << r.out);
  }
  {
    const RunResult r = run(bin + " moments --k 4 --n 50 --snr-db -1,-3 --seed 5");
    CHECK_MSG(r.exit_code == 0, "H1 moments exit " << r.exit_code);
    CHECK_MSG(r.out.find("N1 = ") != std::string::npos, "N1 line: " << r.out);
  }

  // roc: schema, determinism, analytic rows
  {
    write_file("/tmp/stsense_roc.json", R"({
      "scenario": {"k": 2, "n": 20, "trials": 2000, "seed": 3,
                   "detectors": ["ST", "ER"], "snrs_db": [3.0], "threads": 2},
      "pfa_grid": {"points": 25, "min": 0.001, "max": 0.99, "scale": "log"},
      "format": "csv"
    })");
    const RunResult r1 = run(bin + " roc --config /tmp/stsense_roc.json --out /tmp/stsense_roc1.csv");
    CHECK_MSG(r1.exit_code == 0, "roc exit " << r1.exit_code << " err " << r1.err);
    const RunResult r2 = run(bin + " roc --config /tmp/stsense_roc.json --out /tmp/stsense_roc2.csv");
    const std::string csv1 = slurp("/tmp/stsense_roc1.csv");
    CHECK_MSG(csv1 == slurp("/tmp/stsense_roc2.csv"), "roc output not deterministic");
    CHECK_MSG(csv1.rfind("detector,source,pfa,pd\n", 0) == 0, "roc header: " << csv1.substr(0, 40));
    CHECK_MSG(csv1.find("ST,analytic,") != std::string::npos, "missing analytic rows");
    CHECK_MSG(csv1.find("ST,empirical,") != std::string::npos, "missing ST empirical rows");
    CHECK_MSG(csv1.find("ER,empirical,") != std::string::npos, "missing ER empirical rows");
    CHECK_MSG(csv1.find("ER,analytic,") == std::string::npos, "analytic rows exist only for ST");
    const std::string first_data = csv1.substr(csv1.find('\n') + 1, 3);
    CHECK_MSG(first_data == "ER,", "rows must be sorted by detector, got " << first_data);
  }

  // roc with an empty detector list is a usage error
  {
    write_file("/tmp/stsense_roc_empty.json",
               R"({"scenario": {"k": 2, "n": 20, "trials": 100, "detectors": []}})");
    const RunResult r = run(bin + " roc --config /tmp/stsense_roc_empty.json");
    CHECK_MSG(r.exit_code == 2, "empty detectors exit " << r.exit_code);
  }

  // pd table
  {
    write_file("/tmp/stsense_pd.json", R"({
      "scenario": {"k": 2, "n": 20, "trials": 1000, "seed": 9, "detectors": ["ST"], "threads": 2},
      "pd_table": {"snr1_grid_db": [-20.0, 5.0], "snr_offset_db": -2.0,
                   "pfa_target": 0.1, "channel_draws": 3, "channel_mode": "random"},
      "format": "csv"
    })");
    const RunResult r = run(bin + " pd --config /tmp/stsense_pd.json --out /tmp/stsense_pd.csv");
    CHECK_MSG(r.exit_code == 0, "pd exit " << r.exit_code << " err " << r.err);
    const std::string csv = slurp("/tmp/stsense_pd.csv");
    CHECK_MSG(csv.rfind("snr1_db,pd_st,pd_john\n", 0) == 0, "pd header: " << csv.substr(0, 40));
    const double low = value_after(csv, "-20,");
    const double high = value_after(csv, "\n5,");
    CHECK_MSG(high > low, "pd not increasing with SNR: " << csv);
  }

  // pd without a table block is a usage error
  {
    write_file("/tmp/stsense_pd_bad.json", R"({"scenario": {"k": 2, "n": 20}})");
    const RunResult r = run(bin + " pd --config /tmp/stsense_pd_bad.json");
    CHECK_MSG(r.exit_code == 2, "pd without table exit " << r.exit_code);
  }

  // validate subset of deterministic criteria
  {
    const RunResult r = run(bin + " validate 1 2 4 11 --threads 2");
    CHECK_MSG(r.exit_code == 0, "validate exit " << r.exit_code << " out " << r.out);
    int pass_lines = 0;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) pass_lines += line.rfind("PASS", 0) == 0;
    CHECK_MSG(pass_lines == 4, "expected 4 PASS lines, got " << pass_lines << "\n" << r.out);
  }

  // unknown flags exit 2
  {
    const RunResult r = run(bin + " threshold --wat 3");
    CHECK_MSG(r.exit_code == 2, "unknown flag exit " << r.exit_code);
    const RunResult r2 = run(bin + " nosuchcommand");
    CHECK_MSG(r2.exit_code == 2, "unknown subcommand exit " << r2.exit_code);
  }

  if (failures == 0) {
    std::puts("cli tests: all OK");
    return 0;
  }
  std::cerr << failures << " cli test failure(s)\n";
  return 1;
}
