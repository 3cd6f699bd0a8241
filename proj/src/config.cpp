#include "bcns/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bcns {

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error([&] {
        std::string where = line > 0 ? "config line " + std::to_string(line) : "config";
        if (!key.empty()) where += ": key '" + key + "'";
        return where + ": " + message;
      }()),
      key_(std::move(key)),
      line_(line) {}

StepperConfig RunConfig::stepper() const {
  StepperConfig s;
  s.cfl = cfl;
  s.dt_max = dt_max;
  s.snapshot_stride = snapshot_stride;
  s.vacuum_floor = vacuum_floor;
  return s;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  Reader(const std::string& key, const Entry& e) : key_(key), e_(e) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(key_, e_.line, msg); }

  double number(const std::string& text) const {
    double x = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, x);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(x)) {
      fail("expected a number, got '" + text + "'");
    }
    return x;
  }
  double number() const { return number(e_.value); }

  // Accepts a plain number or a fraction a/b.
  double ratio(const std::string& text) const {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return number(text);
    const double den = number(trim(text.substr(slash + 1)));
    if (den == 0.0) fail("zero denominator in '" + text + "'");
    return number(trim(text.substr(0, slash))) / den;
  }

  long long integer(const std::string& text) const {
    long long x = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, x);
    if (text.empty() || ec != std::errc() || ptr != end) fail("expected an integer, got '" + text + "'");
    return x;
  }
  int integer() const {
    const long long x = integer(e_.value);
    if (x < -1000000000LL || x > 1000000000LL) fail("integer out of range");
    return static_cast<int>(x);
  }

  std::uint64_t unsigned64() const {
    std::uint64_t x = 0;
    const auto& t = e_.value;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) fail("expected an unsigned integer, got '" + t + "'");
    return x;
  }

  const std::string& text() const { return e_.value; }

 private:
  const std::string& key_;
  const Entry& e_;
};

// `name(arg)` or `name`
std::pair<std::string, std::string> call_form(const Reader& r) {
  const std::string& v = r.text();
  const auto open = v.find('(');
  if (open == std::string::npos) return {v, ""};
  if (v.back() != ')') r.fail("unbalanced parentheses in '" + v + "'");
  return {trim(v.substr(0, open)), trim(v.substr(open + 1, v.size() - open - 2))};
}

InitialSpec parse_initial(const Reader& r, const std::filesystem::path& base_dir) {
  const auto [name, arg] = call_form(r);
  InitialSpec spec;
  if (name == "taylor_green") {
    if (!arg.empty()) r.fail("taylor_green takes no argument");
    spec.kind = InitialKind::taylor_green;
  } else if (name == "oscillatory") {
    spec.kind = InitialKind::oscillatory;
    if (arg.empty()) r.fail("oscillatory needs an epsilon, e.g. oscillatory(1/4)");
    spec.epsilon = r.ratio(arg);
    if (!(spec.epsilon > 0.0)) r.fail("epsilon must be positive");
    const double inv = 1.0 / spec.epsilon;
    if (std::abs(inv - std::round(inv)) > 1e-9) r.fail("1/epsilon must be an integer");
  } else if (name == "random") {
    spec.kind = InitialKind::random;
    if (!arg.empty()) {
      spec.decay = r.number(arg);
      if (spec.decay < 0.0) r.fail("spectrum exponent must be nonnegative");
    }
  } else if (name == "file") {
    spec.kind = InitialKind::file;
    if (arg.empty()) r.fail("file needs a path");
    spec.path = std::filesystem::path(arg);
    if (spec.path.is_relative()) spec.path = base_dir / spec.path;
  } else {
    r.fail("unknown initial data '" + r.text() + "' (taylor_green | oscillatory(eps) | random[(s)] | file(path))");
  }
  return spec;
}

using Setter = std::function<void(RunConfig&, const Reader&, const std::filesystem::path&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table{
      {"d", [](RunConfig& c, const Reader& r, auto&) { c.d = r.integer(); }},
      {"N", [](RunConfig& c, const Reader& r, auto&) { c.n = r.integer(); }},
      {"mu", [](RunConfig& c, const Reader& r, auto&) { c.mu = r.number(); }},
      {"lambda", [](RunConfig& c, const Reader& r, auto&) { c.lambda = r.number(); }},
      {"nu_list",
       [](RunConfig& c, const Reader& r, auto&) {
         c.nu_list.clear();
         for (const auto& item : split_list(r.text())) c.nu_list.push_back(r.number(item));
       }},
      {"gamma", [](RunConfig& c, const Reader& r, auto&) { c.gamma = r.number(); }},
      {"p", [](RunConfig& c, const Reader& r, auto&) { c.p = r.number(); }},
      {"horizon", [](RunConfig& c, const Reader& r, auto&) { c.horizon = r.number(); }},
      {"cfl", [](RunConfig& c, const Reader& r, auto&) { c.cfl = r.number(); }},
      {"dt_max", [](RunConfig& c, const Reader& r, auto&) { c.dt_max = r.number(); }},
      {"snapshot_stride", [](RunConfig& c, const Reader& r, auto&) { c.snapshot_stride = r.number(); }},
      {"vacuum_floor", [](RunConfig& c, const Reader& r, auto&) { c.vacuum_floor = r.number(); }},
      {"seed", [](RunConfig& c, const Reader& r, auto&) { c.seed = r.unsigned64(); }},
      {"initial", [](RunConfig& c, const Reader& r, const auto& base) { c.initial = parse_initial(r, base); }},
      {"amplitude", [](RunConfig& c, const Reader& r, auto&) { c.amplitude = r.number(); }},
      {"perturbation", [](RunConfig& c, const Reader& r, auto&) { c.perturbation = r.number(); }},
      {"solver",
       [](RunConfig& c, const Reader& r, auto&) {
         if (r.text() == "both") c.solver = SolverChoice::both;
         else if (r.text() == "cns") c.solver = SolverChoice::cns;
         else if (r.text() == "ins") c.solver = SolverChoice::ins;
         else r.fail("expected both | cns | ins, got '" + r.text() + "'");
       }},
      {"lemmas",
       [](RunConfig& c, const Reader& r, auto&) {
         c.lemmas.clear();
         for (const auto& item : split_list(r.text())) {
           if (item.empty()) r.fail("empty lemma id");
           c.lemmas.push_back(item);
         }
       }},
      {"lemma_trials", [](RunConfig& c, const Reader& r, auto&) { c.lemma_trials = r.integer(); }},
      {"lemma_sizes",
       [](RunConfig& c, const Reader& r, auto&) {
         c.lemma_sizes.clear();
         for (const auto& item : split_list(r.text())) {
           const long long n = r.integer(item);
           if (n < 8 || n > 4096 || n % 2) r.fail("grid sizes must be even and in [8, 4096]");
           c.lemma_sizes.push_back(static_cast<int>(n));
         }
       }},
      {"output_dir",
       [](RunConfig& c, const Reader& r, const auto& base) {
         if (r.text().empty()) r.fail("empty path");
         c.output_dir = std::filesystem::path(r.text());
         if (c.output_dir.is_relative()) c.output_dir = base / c.output_dir;
       }},
  };
  return table;
}

void validate(const RunConfig& c, const std::map<std::string, Entry>& seen) {
  auto fail = [&](const std::string& key, const std::string& msg) {
    const auto it = seen.find(key);
    throw ConfigError(key, it == seen.end() ? 0 : it->second.line, msg);
  };
  if (c.d != 2 && c.d != 3) fail("d", "must be 2 or 3");
  if (c.n < 8 || c.n % 2) fail("N", "must be even and at least 8");
  if (!(c.mu > 0.0)) fail("mu", "must be positive");
  if (!(c.lambda + 2.0 * c.mu > 0.0)) fail("lambda", "lambda + 2 mu must be positive");
  for (std::size_t i = 0; i < c.nu_list.size(); ++i) {
    if (!(c.nu_list[i] > 0.0)) fail("nu_list", "values must be positive");
    if (i > 0 && !(c.nu_list[i] > c.nu_list[i - 1])) fail("nu_list", "values must be strictly increasing");
  }
  if (!(c.gamma >= 1.0)) fail("gamma", "must be at least 1");
  if (!(c.p >= 1.0)) fail("p", "must be at least 1");
  if (!(c.horizon > 0.0)) fail("horizon", "must be positive");
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) fail("cfl", "must lie in (0, 1)");
  if (!(c.dt_max > 0.0)) fail("dt_max", "must be positive");
  if (!(c.snapshot_stride > 0.0)) fail("snapshot_stride", "must be positive");
  if (!(c.vacuum_floor > 0.0 && c.vacuum_floor < 1.0)) fail("vacuum_floor", "must lie in (0, 1)");
  if (c.initial.kind == InitialKind::oscillatory) {
    const double inv = std::round(1.0 / c.initial.epsilon);
    if (3.0 * inv >= c.n) fail("initial", "1/epsilon must stay inside the dealiased band (3/epsilon < N)");
  }
  if (c.lemma_trials < 1) fail("lemma_trials", "must be positive");
  if (c.lemma_sizes.empty()) fail("lemma_sizes", "needs at least one size");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  std::map<std::string, Entry> seen;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("", line_no, "missing key before '='");
    const auto& table = setters();
    if (std::none_of(table.begin(), table.end(), [&](const auto& s) { return s.first == key; })) {
      throw ConfigError(key, line_no, "unknown key");
    }
    if (seen.count(key)) {
      throw ConfigError(key, line_no, "repeated key (first set on line " + std::to_string(seen[key].line) + ")");
    }
    seen[key] = {trim(line.substr(eq + 1)), line_no};
  }

  RunConfig config;
  for (const auto& [key, setter] : setters()) {
    const auto it = seen.find(key);
    if (it == seen.end()) continue;
    const Reader reader(key, it->second);
    if (it->second.value.empty()) reader.fail("missing value");
    setter(config, reader, base_dir);
  }
  validate(config, seen);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("", 0, "cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

}  // namespace bcns
