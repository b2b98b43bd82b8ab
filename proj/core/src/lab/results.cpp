#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <thread>

#include "detail/format.hpp"
#include "json.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/lab.hpp"

#ifndef MIXROBUST_VERSION
#define MIXROBUST_VERSION "dev"
#endif

namespace mixrobust::lab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out = "experiment,member,n,statistic,value,std_error,seed,family,timestamp\n";
  for (const auto& r : rows) {
    out += csv_field(r.experiment) + ',' + csv_field(r.member) + ',' + std::to_string(r.n) + ',' +
           csv_field(r.statistic) + ',' + detail::format_double(r.value) + ',' + detail::format_double(r.std_error) +
           ',' + std::to_string(r.seed) + ',' + csv_field(r.family) + ',' + csv_field(r.timestamp) + '\n';
  }
  return out;
}

void ResultTable::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << to_csv();
}

std::vector<const ResultRow*> ResultTable::select(std::string_view member, std::string_view statistic) const {
  std::vector<const ResultRow*> out;
  for (const auto& r : rows)
    if (r.member == member && r.statistic == statistic) out.push_back(&r);
  return out;
}

std::string manifest_json(const ExperimentConfig& cfg, const RunResult& result) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(cfg.canonical)));
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

  nlohmann::ordered_json m;
  m["schema"] = kCsvSchema;
  m["tool_version"] = MIXROBUST_VERSION;
  m["experiment"] = to_string(cfg.kind);
  m["config_hash"] = std::string("fnv1a64:") + hash;
  m["master_seed"] = cfg.master_seed;
  m["family"] = result.family;
  m["class"] = cfg.class_descriptor;
  auto members = nlohmann::ordered_json::array();
  for (const auto& c : cfg.members)
    members.push_back({{"id", c.id}, {"coefficients", c.spec.a.describe()}, {"noise", c.spec.noise.describe()}});
  m["members"] = members;
  m["rows"] = result.table.rows.size();
  m["notes"] = result.notes;
  m["violations"] = result.violations;
  m["threads"] = thread_count();
  m["generated_at"] = stamp;
  return m.dump(2) + "\n";
}

std::size_t thread_count() {
  if (const char* env = std::getenv("MIXROBUST_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("MIXROBUST_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(thread_count(), count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; !failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> stratified_thin(std::vector<double> values, std::size_t max_atoms) {
  std::sort(values.begin(), values.end());
  if (max_atoms == 0) throw ParameterError("stratified_thin: max_atoms must be positive");
  const std::size_t n = values.size();
  if (n <= max_atoms) return values;
  std::vector<double> out(max_atoms);
  for (std::size_t j = 0; j < max_atoms; ++j) {
    const std::size_t lo = j * n / max_atoms, hi = (j + 1) * n / max_atoms;
    out[j] = values[(lo + hi - 1) / 2];
  }
  return out;
}

}  // namespace mixrobust::lab
