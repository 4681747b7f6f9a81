#include "ndnoma/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ndnoma/errors.hpp"

namespace ndnoma::harness {

namespace {

void append_double(std::string& out, double v) {
  if (std::isinf(v)) {
    out += v < 0 ? "-inf" : "inf";
    return;
  }
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InternalError("to_chars failed");
  out.append(buf.data(), ptr);
}

template <typename T>
T parse_field(std::string_view s, int line) {
  if (s == "-inf" && std::is_floating_point_v<T>) return -std::numeric_limits<T>::infinity();
  if (s == "inf" && std::is_floating_point_v<T>) return std::numeric_limits<T>::infinity();
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_csv(const std::vector<SweepResult>& results) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : results) {
    out += r.scheme;
    out += ',';
    out += r.user;
    out += ',';
    append_double(out, r.k_db);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    append_double(out, r.x_db);
    out += ',';
    out += r.x_kind;
    for (double v : {r.ber_sim, r.ci99, r.bep_theory, r.bep_se}) {
      out += ',';
      append_double(out, v);
    }
    out += ',';
    out += std::to_string(r.bits);
    out += ',';
    append_double(out, r.wall_s);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<SweepResult>& results, const std::filesystem::path& path) {
  if (results.empty()) throw ParameterError("write_csv: no results to write");
  const std::string text = format_csv(results);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<SweepResult> parse_csv(std::string_view text) {
  std::vector<SweepResult> out;
  int line_no = 0;
  bool header = true;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw ConfigError("csv: unexpected header");
      header = false;
      continue;
    }
    std::array<std::string_view, 12> f{};
    std::size_t count = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      if (count == f.size()) throw ConfigError("csv line " + std::to_string(line_no) + ": too many fields");
      f[count++] = line.substr(0, comma);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (count != f.size())
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected 12 fields");
    SweepResult r;
    r.scheme = f[0];
    r.user = f[1];
    r.k_db = parse_field<double>(f[2], line_no);
    r.n = parse_field<std::size_t>(f[3], line_no);
    r.x_db = parse_field<double>(f[4], line_no);
    r.x_kind = f[5];
    r.ber_sim = parse_field<double>(f[6], line_no);
    r.ci99 = parse_field<double>(f[7], line_no);
    r.bep_theory = parse_field<double>(f[8], line_no);
    r.bep_se = parse_field<double>(f[9], line_no);
    r.bits = parse_field<std::uint64_t>(f[10], line_no);
    r.wall_s = parse_field<double>(f[11], line_no);
    out.push_back(std::move(r));
  }
  if (header) throw ConfigError("csv: missing header");
  return out;
}

std::vector<SweepResult> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_csv(s.str());
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ndnoma::harness
