#ifndef LCTCONV_IO_HPP
#define LCTCONV_IO_HPP

// Signal files and test-signal generators.
//
// JSON: {"grid": {"start": s, "step": d, "count": n}, "values": [[re, im], ...]}
// CSV:  "# grid start=<s> step=<d> count=<n>" then "t,re,im" and one row per
//       sample. The comment line is optional on read; without it the grid is
//       taken from the t column.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lctconv/errors.hpp"
#include "lctconv/grid.hpp"
#include "lctconv/solver.hpp"
#include "lctconv/theorems.hpp"

namespace lctconv {

enum class SignalFormat { Json, Csv };

inline SignalFormat format_for(const std::filesystem::path &p) {
  auto ext = p.extension().string();
  for (auto &c : ext) c = static_cast<char>(std::tolower(c));
  return ext == ".csv" ? SignalFormat::Csv : SignalFormat::Json;
}

inline nlohmann::json to_json(const SampleGrid &g) {
  return {{"start", g.start()}, {"step", g.step()}, {"count", g.count()}};
}

inline nlohmann::json to_json(const VerifierReport &r) {
  nlohmann::json j{{"identity", r.identity},
                   {"max_rel_error", r.max_rel_error},
                   {"tolerance", r.tolerance},
                   {"passed", r.passed},
                   {"grid", to_json(r.grid)}};
  if (!r.notes.empty()) {
    auto &n = j["notes"] = nlohmann::json::object();
    for (const auto &[k, v] : r.notes) n[k] = v;
  }
  return j;
}

inline nlohmann::json to_json(const SolverDiagnostics &d) {
  nlohmann::json j{{"min_abs_symbol", d.min_abs_symbol},
                   {"regularized", d.regularized},
                   {"residual_rel_l2", nullptr},
                   {"sup_inverse_symbol", d.sup_inverse_symbol},
                   {"threshold", d.threshold},
                   {"invertible", d.invertible}};
  if (d.residual_rel_l2) {
    j["residual_rel_l2"] = *d.residual_rel_l2;
    j["converged"] = d.converged;
  }
  return j;
}

namespace detail {

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double json_number(const nlohmann::json &j, const std::string &where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where, "non-finite value");
  return v;
}

inline SampledSignal parse_json_signal(const std::string &text,
                                       const std::string &name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(name + " byte " + std::to_string(e.byte), e.what());
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(name, e.what());
  }
  if (!doc.is_object() || !doc.contains("grid") || !doc.contains("values")) {
    throw ParseError(name, "expected an object with \"grid\" and \"values\"");
  }
  const auto &g = doc["grid"];
  if (!g.is_object() || !g.contains("start") || !g.contains("step") ||
      !g.contains("count")) {
    throw ParseError(name + " grid", "expected start, step and count");
  }
  const double start = json_number(g["start"], name + " grid.start");
  const double step = json_number(g["step"], name + " grid.step");
  if (!g["count"].is_number_integer() || g["count"].get<std::int64_t>() < 0) {
    throw ParseError(name + " grid.count", "expected a non-negative integer");
  }
  const auto count = g["count"].get<std::size_t>();
  const auto &vals = doc["values"];
  if (!vals.is_array()) throw ParseError(name + " values", "expected an array");
  if (vals.size() != count) {
    std::ostringstream os;
    os << name << ": grid.count is " << count << " but " << vals.size()
       << " values were given";
    throw GridMismatch(os.str());
  }
  CVector v(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::string where = name + " values[" + std::to_string(k) + "]";
    const auto &e = vals[k];
    if (!e.is_array() || e.size() != 2) {
      throw ParseError(where, "expected [re, im]");
    }
    v[k] = {json_number(e[0], where + "[0]"), json_number(e[1], where + "[1]")};
  }
  return {SampleGrid(start, step, count), std::move(v)};
}

inline double parse_double(std::string_view s, const std::string &where) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  const std::string buf(s);
  if (buf.empty()) throw ParseError(where, "empty field");
  char *end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE) {
    throw ParseError(where, "not a number: '" + buf + "'");
  }
  if (!std::isfinite(v)) throw ParseError(where, "non-finite value");
  return v;
}

inline SampledSignal parse_csv_signal(const std::string &text,
                                      const std::string &name) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<SampleGrid> header_grid;
  bool seen_columns = false;
  std::vector<double> ts;
  CVector v;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string word;
      std::map<std::string, std::string> kv;
      while (hs >> word) {
        const auto eq = word.find('=');
        if (eq != std::string::npos) kv[word.substr(0, eq)] = word.substr(eq + 1);
      }
      if (kv.count("start") && kv.count("step") && kv.count("count")) {
        const double c = parse_double(kv["count"], where + " count");
        if (c < 0 || c != std::floor(c)) {
          throw ParseError(where, "grid count must be a non-negative integer");
        }
        header_grid.emplace(parse_double(kv["start"], where + " start"),
                            parse_double(kv["step"], where + " step"),
                            static_cast<std::size_t>(c));
      }
      continue;
    }
    if (!seen_columns) {
      if (line != "t,re,im") {
        throw ParseError(where, "expected header 't,re,im'");
      }
      seen_columns = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 3) throw ParseError(where, "expected 3 fields");
    ts.push_back(parse_double(fields[0], where + " t"));
    v.emplace_back(parse_double(fields[1], where + " re"),
                   parse_double(fields[2], where + " im"));
  }
  if (!seen_columns) throw ParseError(name, "missing 't,re,im' header");
  if (header_grid) {
    if (header_grid->count() != v.size()) {
      std::ostringstream os;
      os << name << ": header count is " << header_grid->count() << " but "
         << v.size() << " rows were given";
      throw GridMismatch(os.str());
    }
    return {*header_grid, std::move(v)};
  }
  if (ts.size() < 2) throw GridMismatch(name + ": need at least two rows");
  const double step = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  const SampleGrid g(ts.front(), step, ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (std::abs(ts[k] - g.point(k)) > 1e-9 * std::max(1.0, std::abs(ts[k]))) {
      throw GridMismatch(name + ": t column is not uniform");
    }
  }
  return {g, std::move(v)};
}

} // namespace detail

inline SampledSignal read_signal(const std::filesystem::path &path,
                                 SignalFormat fmt) {
  const std::string text = detail::read_file(path);
  const std::string name = path.string();
  return fmt == SignalFormat::Csv ? detail::parse_csv_signal(text, name)
                                  : detail::parse_json_signal(text, name);
}

inline SampledSignal read_signal(const std::filesystem::path &path) {
  return read_signal(path, format_for(path));
}

inline std::string signal_to_json(const SampledSignal &s) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto &z : s.values()) vals.push_back({z.real(), z.imag()});
  return nlohmann::json{{"grid", to_json(s.grid())}, {"values", vals}}.dump();
}

inline std::string signal_to_csv(const SampledSignal &s) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# grid start=" << s.grid().start() << " step=" << s.grid().step()
     << " count=" << s.grid().count() << "\n";
  os << "t,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    os << s.grid().point(k) << "," << s[k].real() << "," << s[k].imag()
       << "\n";
  }
  return os.str();
}

inline void write_text(const std::filesystem::path &path,
                       const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

inline void write_signal(const SampledSignal &s,
                         const std::filesystem::path &path, SignalFormat fmt) {
  if (s.size() == 0) throw IoError("refusing to write an empty signal");
  write_text(path, fmt == SignalFormat::Csv ? signal_to_csv(s)
                                            : signal_to_json(s));
}

inline void write_signal(const SampledSignal &s,
                         const std::filesystem::path &path) {
  write_signal(s, path, format_for(path));
}

/// Plot-ready table: axis, magnitude, phase.
inline std::string plot_csv(const SampleGrid &g, std::span<const cplx> v) {
  std::ostringstream os;
  os << std::setprecision(17) << "x,abs,arg\n";
  for (std::size_t k = 0; k < v.size(); ++k) {
    os << g.point(k) << "," << std::abs(v[k]) << "," << std::arg(v[k]) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Generators.

struct Gaussian {
  double center = 0.0;
  double width = 1.0;
};
struct Chirp {
  double rate = 1.0;
};
struct Rect {
  double left = 0.0;
  double right = 1.0;
};
struct WhiteNoise {
  std::uint64_t seed = 0;
};
// Gaussian envelope times exp(j rate t^2 / 2).
struct ChirpedGaussian {
  double center = 0.0;
  double width = 1.0;
  double rate = 0.5;
};
// Indicator of [left, right] convolved with a unit-mass Gaussian of the given
// softness.
struct SmoothRect {
  double left = -1.0;
  double right = 1.0;
  double softness = 0.5;
};

using GeneratorKind =
    std::variant<Gaussian, Chirp, Rect, WhiteNoise, ChirpedGaussian, SmoothRect>;

struct GeneratorSpec {
  GeneratorKind kind;
  SampleGrid grid;
};

namespace detail {

inline void validate(const GeneratorKind &k) {
  std::visit(
      [](const auto &g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Gaussian> ||
                      std::is_same_v<T, ChirpedGaussian>) {
          if (!(g.width > 0.0)) throw InvalidSignal("width must be positive");
        } else if constexpr (std::is_same_v<T, Rect>) {
          if (!(g.left < g.right)) throw InvalidSignal("rect needs left < right");
        } else if constexpr (std::is_same_v<T, SmoothRect>) {
          if (!(g.left < g.right)) throw InvalidSignal("rect needs left < right");
          if (!(g.softness > 0.0)) throw InvalidSignal("softness must be positive");
        }
      },
      k);
}

} // namespace detail

inline SampledSignal generate(const GeneratorSpec &spec) {
  detail::validate(spec.kind);
  const auto &grid = spec.grid;
  return std::visit(
      [&](const auto &g) -> SampledSignal {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return SampledSignal::sample(grid, [&](double t) {
            const double x = (t - g.center) / g.width;
            return std::exp(-0.5 * x * x);
          });
        } else if constexpr (std::is_same_v<T, Chirp>) {
          return SampledSignal::sample(
              grid, [&](double t) { return std::polar(1.0, 0.5 * g.rate * t * t); });
        } else if constexpr (std::is_same_v<T, Rect>) {
          // Half-open [left, right).
          return SampledSignal::sample(grid, [&](double t) {
            return (t >= g.left && t < g.right) ? 1.0 : 0.0;
          });
        } else if constexpr (std::is_same_v<T, WhiteNoise>) {
          std::mt19937_64 rng(g.seed);
          std::normal_distribution<double> n(0.0, std::numbers::sqrt2 / 2.0);
          CVector v(grid.count());
          for (auto &z : v) {
            const double re = n(rng);
            z = {re, n(rng)};
          }
          return {grid, std::move(v)};
        } else if constexpr (std::is_same_v<T, ChirpedGaussian>) {
          return SampledSignal::sample(grid, [&](double t) {
            const double x = (t - g.center) / g.width;
            return std::polar(std::exp(-0.5 * x * x), 0.5 * g.rate * t * t);
          });
        } else {
          const double s = g.softness * std::numbers::sqrt2;
          return SampledSignal::sample(grid, [&](double t) {
            return 0.5 * (std::erf((t - g.left) / s) - std::erf((t - g.right) / s));
          });
        }
      },
      spec.kind);
}

/// Parses "name" or "name:key=value;key=value". Names: gaussian (center,
/// width), chirp (rate), rect (left, right), noise (seed), chirped-gaussian
/// (center, width, rate), smooth-rect (left, right, softness).
inline GeneratorKind parse_generator(const std::string &text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::string_view rest(text);
    rest.remove_prefix(colon + 1);
    while (!rest.empty()) {
      const auto sep = rest.find(';');
      const std::string_view item = rest.substr(0, sep);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(text, "expected key=value");
      }
      kv[std::string(item.substr(0, eq))] =
          detail::parse_double(item.substr(eq + 1), text);
      if (sep == std::string_view::npos) break;
      rest.remove_prefix(sep + 1);
    }
  }
  auto take = [&](const char *key, double def) {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  GeneratorKind out;
  if (name == "gaussian") {
    out = Gaussian{take("center", 0.0), take("width", 1.0)};
  } else if (name == "chirp") {
    out = Chirp{take("rate", 1.0)};
  } else if (name == "rect") {
    out = Rect{take("left", 0.0), take("right", 1.0)};
  } else if (name == "noise") {
    const double seed = take("seed", 0.0);
    if (seed < 0 || seed != std::floor(seed)) {
      throw ParseError(text, "seed must be a non-negative integer");
    }
    out = WhiteNoise{static_cast<std::uint64_t>(seed)};
  } else if (name == "chirped-gaussian") {
    out = ChirpedGaussian{take("center", 0.0), take("width", 1.0),
                          take("rate", 0.5)};
  } else if (name == "smooth-rect") {
    out = SmoothRect{take("left", -1.0), take("right", 1.0),
                     take("softness", 0.5)};
  } else {
    throw ParseError(text, "unknown generator '" + name + "'");
  }
  if (!kv.empty()) {
    throw ParseError(text, "unknown parameter '" + kv.begin()->first + "'");
  }
  detail::validate(out);
  return out;
}

} // namespace lctconv

#endif // LCTCONV_IO_HPP
