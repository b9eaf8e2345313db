#include "scv/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "scv/bergman.hpp"
#include "scv/green.hpp"
#include "scv/metrics.hpp"
#include "scv/probes.hpp"

namespace scv::cli {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Input with whitespace removed; remembers the 1-based column of every kept character.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : end_column_(text.size() + 1) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
      s_.push_back(text[i]);
      columns_.push_back(i + 1);
    }
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  std::size_t column() const { return pos_ < s_.size() ? columns_[pos_] : end_column_; }
  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(column(), what); }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }
  void expect_key(const char* key) {
    for (const char* k = key; *k; ++k) {
      if (!accept(*k)) fail(std::string("expected '") + key + "='" + found());
    }
    expect('=');
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input" + found());
  }

  std::string word() {
    std::string w;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '_')) {
      w.push_back(s_[pos_++]);
    }
    return w;
  }

  double number() {
    const std::size_t start = column();
    bool negative = false;
    if (accept('+')) {
    } else if (accept('-')) {
      negative = true;
    }
    if (!(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) fail("expected a number" + found());
    double value = 0.0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), value);
    if (ec != std::errc() || !std::isfinite(value)) throw ParseError(start, "malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return negative ? -value : value;
  }

  long integer() {
    const std::size_t start = column();
    long value = 0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), value);
    if (ec != std::errc() || ptr == first) throw ParseError(start, "expected an integer" + found());
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  double positive(const char* what) {
    const std::size_t start = column();
    const double v = number();
    if (!(v > 0.0)) throw ParseError(start, std::string(what) + " must be positive");
    return v;
  }

  Complex complex() {
    const std::size_t start = column();
    // Pure imaginary unit: "i", "+i", "-i".
    if (peek() == 'i' || ((peek() == '+' || peek() == '-') && peek(1) == 'i')) {
      const double sign = accept('-') ? -1.0 : (accept('+'), 1.0);
      expect('i');
      return {0.0, sign};
    }
    const double first = number();
    if (accept('i')) return {0.0, first};
    if (peek() == '+' || peek() == '-') {
      const double sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      if (accept('i')) return {first, sign};
      if (peek() == '+' || peek() == '-') fail("doubled sign in complex number");
      const double im = number();
      if (!accept('i')) throw ParseError(start, "imaginary part must end with 'i'");
      return {first, sign * im};
    }
    return {first, 0.0};
  }

 private:
  std::string found() const {
    if (done()) return ", found end of input";
    return std::string(", found '") + peek() + "'";
  }

  std::string s_;
  std::vector<std::size_t> columns_;
  std::size_t end_column_;
  std::size_t pos_ = 0;
};

std::vector<double> positive_list(Cursor& c, const char* what) {
  std::vector<double> xs{c.positive(what)};
  while (c.accept(',')) xs.push_back(c.positive(what));
  return xs;
}

DomainSpec domain_expr(Cursor& c) {
  const std::size_t start = c.column();
  const std::string kind = c.word();
  auto build = [&](auto&& make) -> DomainSpec {
    try {
      DomainSpec d = make();
      if (d.dim() > kMaxDimension) throw ParseError(start, "dimension exceeds " + std::to_string(kMaxDimension));
      return d;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(start, e.what());
    }
  };
  if (kind == "product") {
    c.expect('(');
    std::vector<DomainSpec> factors{domain_expr(c)};
    while (c.accept(';')) factors.push_back(domain_expr(c));
    c.expect(')');
    if (factors.size() < 2) throw ParseError(start, "product needs at least two factors");
    return build([&] { return DomainSpec::product(std::move(factors)); });
  }
  if (kind.empty()) c.fail("expected a domain variant");
  c.expect(':');
  if (kind == "disc") {
    c.expect_key("c");
    const Complex center = c.complex();
    c.expect(',');
    c.expect_key("r");
    const double r = c.positive("radius");
    return build([&] { return DomainSpec::disc(center, r); });
  }
  if (kind == "ball") {
    c.expect_key("n");
    const std::size_t at = c.column();
    const long n = c.integer();
    if (n < 1) throw ParseError(at, "ball dimension must be at least 1");
    if (n > static_cast<long>(kMaxDimension)) throw ParseError(at, "dimension exceeds " + std::to_string(kMaxDimension));
    return build([&] { return DomainSpec::ball(static_cast<int>(n)); });
  }
  if (kind == "polydisc") {
    c.expect_key("r");
    auto radii = positive_list(c, "radius");
    return build([&] { return DomainSpec::polydisc(std::move(radii)); });
  }
  if (kind == "ellipsoid") {
    c.expect_key("p");
    auto p = positive_list(c, "exponent");
    return build([&] { return DomainSpec::ellipsoid(std::move(p)); });
  }
  if (kind == "gauge") {
    const std::size_t at = c.column();
    const std::string name = c.word();
    if (name == "model-z1z2") return DomainSpec::model_z1z2();
    throw ParseError(at, "unknown gauge '" + name + "'");
  }
  throw ParseError(start, "unknown domain variant '" + kind + "'");
}

MultiIndex multi_index_expr(Cursor& c) {
  std::vector<int> entries;
  do {
    const std::size_t at = c.column();
    const long v = c.integer();
    if (v < 0 || v > 1000) throw ParseError(at, "multi-index entries must lie in [0, 1000]");
    entries.push_back(static_cast<int>(v));
  } while (c.accept('_'));
  if (entries.size() > kMaxDimension) c.fail("multi-index longer than " + std::to_string(kMaxDimension));
  return MultiIndex(std::move(entries));
}

std::string describe(const SublevelGeometry& g) {
  return std::visit(
      overloaded{
          [](const ScaledCopy& s) { return "scaled-copy(" + format_double(s.factor) + ";" + to_string(s.base) + ")"; },
          [](const EuclideanDisc& d) {
            return "euclidean-disc(c=" + format_complex(d.center) + ",r=" + format_double(d.radius) + ")";
          },
          [](const AffineBall& b) {
            std::string rows;
            for (Eigen::Index i = 0; i < b.map.rows(); ++i) {
              rows += i > 0 ? ";" : "";
              for (Eigen::Index j = 0; j < b.map.cols(); ++j) rows += (j > 0 ? "," : "") + format_complex(b.map(i, j));
            }
            return "affine-ball(c=" + format_point(b.center) + ";map=" + rows + ")";
          },
          [](const ProductOf& p) {
            std::string out = "product-of(";
            for (std::size_t i = 0; i < p.factors.size(); ++i) out += (i > 0 ? ";" : "") + describe(p.factors[i]);
            return out + ")";
          },
      },
      g.shape);
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string render_cell(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "";
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case json::value_t::number_float: return format_double(v.get<double>());
    case json::value_t::string: return csv_escape(v.get<std::string>());
    default: return csv_escape(v.dump());
  }
}

// ---- subcommand plumbing ----

struct Options {
  std::string domain, point, pole, vector, poly, grid, t_grid, radii, alpha, direction;
  std::string target = "vol";
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
  int cap = -1;
  std::uint64_t samples = 0;
  double level = 0.0;
  int k = 1;
  std::size_t count = 0;
  int points = 16;
  bool ladder = false;
  bool scaled = false;
};

struct Outcome {
  Table table;
  int code = 0;
};

using Handler = std::function<Outcome(const Options&)>;

int cap_for(const Options& o, std::size_t n) { return o.cap >= 0 ? o.cap : default_degree_cap(n); }

ComplexPoint point_for(const std::string& text, const DomainSpec& d, const char* what) {
  const ComplexPoint p = parse_point(text);
  if (p.dim() != d.dim()) {
    throw InvalidArgument(std::string(what) + " has " + std::to_string(p.dim()) + " coordinates, domain has " +
                          std::to_string(d.dim()));
  }
  return p;
}

HomogeneousPoly poly_for(const std::string& text, const DomainSpec& d) {
  const HomogeneousPoly H = parse_poly(text);
  if (H.dim() != d.dim()) throw InvalidArgument("polynomial dimension does not match domain");
  return H;
}

json kernel_status(const KernelResult& r) { return r.trivial_space ? "no L2 monomials" : "ok"; }

Table kernel_table(const std::vector<std::string>& lead_cols, std::vector<json> lead, const KernelResult& r,
                   std::uint64_t seed) {
  Table t;
  t.columns = lead_cols;
  for (const char* c : {"degree_cap", "value", "closed_form", "tail_estimate", "exact_flag", "status", "seed"}) {
    t.columns.push_back(c);
  }
  for (json v : {json(r.degree_cap), json(r.value), opt(r.closed_form), json(r.tail_estimate), json(r.exact_flag),
                 kernel_status(r), json(seed)}) {
    lead.push_back(std::move(v));
  }
  t.add(std::move(lead));
  return t;
}

Table probe_table(const ProbeReport& r) {
  Table t;
  t.columns = {"probe", "config", "lhs", "rhs", "margin", "tolerance", "violated", "verdict", "policy",
               "mc_samples", "seed"};
  for (const auto& c : r.checks) {
    t.add({r.probe, c.config, c.lhs, c.rhs, c.margin, c.tolerance, c.violated, to_string(r.verdict),
           to_string(r.policy), r.mc_samples, r.seed});
  }
  if (r.checks.empty()) {
    t.add({r.probe, nullptr, nullptr, nullptr, nullptr, nullptr, false, to_string(r.verdict), to_string(r.policy),
           r.mc_samples, r.seed});
  }
  t.notes = r.notes;
  return t;
}

int verdict_code(Verdict v) { return v == Verdict::fail ? 1 : 0; }

struct Command {
  std::string name;
  std::string help;
  std::function<void(CLI::App&, Options&)> options;
  Handler handler;
};

void add_domain(CLI::App& app, Options& o) { app.add_option("--domain", o.domain, "domain spec")->required(); }
void add_point(CLI::App& app, Options& o) { app.add_option("--point", o.point, "point, comma-separated complex")->required(); }
void add_pole(CLI::App& app, Options& o) { app.add_option("--pole", o.pole, "pole, comma-separated complex")->required(); }
void add_vector(CLI::App& app, Options& o) { app.add_option("--vector", o.vector, "tangent vector X")->required(); }
void add_poly(CLI::App& app, Options& o) {
  app.add_option("--poly", o.poly, "homogeneous polynomial, e.g. 1_1:1+0i")->required();
}
void add_cap(CLI::App& app, Options& o) {
  app.add_option("--cap", o.cap, "series degree cap (default 40/30/20 for n=1/2/3+)")->check(CLI::Range(0, 200));
}
void add_samples(CLI::App& app, Options& o, std::uint64_t fallback, const char* help) {
  o.samples = fallback;
  app.add_option("--samples", o.samples, help)->capture_default_str();
}
void add_count(CLI::App& app, Options& o, const char* flag, std::size_t fallback, const char* help) {
  o.count = fallback;
  app.add_option(flag, o.count, help)->capture_default_str();
}

const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = {
      {"gauge", "Minkowski gauge h(z) of a balanced domain",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_point(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint z = point_for(o.point, d, "point");
         Outcome r;
         r.table.columns = {"domain", "point", "gauge", "seed"};
         r.table.add({to_string(d), format_point(z), gauge(d, z), o.seed});
         return r;
       }},
      {"contains", "membership test z in D",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_point(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint z = point_for(o.point, d, "point");
         Outcome r;
         r.table.columns = {"domain", "point", "inside", "seed"};
         r.table.add({to_string(d), format_point(z), contains(d, z), o.seed});
         return r;
       }},
      {"bbox", "coordinate bounding box, one row per real coordinate",
       [](CLI::App& a, Options& o) { add_domain(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         Outcome r;
         r.table.columns = {"domain", "coordinate", "lo", "hi", "status", "seed"};
         const auto box = bounding_box(d);
         if (!box) {
           r.table.add({to_string(d), nullptr, nullptr, nullptr, "unbounded", o.seed});
           return r;
         }
         for (std::size_t i = 0; i < box->lo.size(); ++i) {
           const std::string coord = std::string(i % 2 == 0 ? "re" : "im") + std::to_string(i / 2 + 1);
           r.table.add({to_string(d), coord, box->lo[i], box->hi[i], "bounded", o.seed});
         }
         return r;
       }},
      {"green", "pluricomplex Green function G_D(z, pole)",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_pole(a, o); add_point(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint p = point_for(o.pole, d, "pole");
         const ComplexPoint z = point_for(o.point, d, "point");
         Outcome r;
         r.table.columns = {"domain", "pole", "point", "green", "seed"};
         r.table.add({to_string(d), format_point(p), format_point(z), green(d, p, z), o.seed});
         return r;
       }},
      {"sublevel", "geometry of {G < a}, or of D_a with --scaled",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_pole(a, o);
         a.add_option("--level", o.level, "sublevel height a <= 0")->required();
         a.add_flag("--scaled", o.scaled, "rescale about the pole: D_a = pole + e^{-a}({G < a} - pole)");
         a.add_option("--point", o.point, "optional point for a membership test");
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint p = point_for(o.pole, d, "pole");
         const SublevelGeometry g = o.scaled ? scaled_sublevel(d, p, o.level) : sublevel_set(d, p, o.level);
         Outcome r;
         r.table.columns = {"domain", "pole", "level", "scaled", "geometry", "point", "inside", "seed"};
         json point = nullptr;
         json inside = nullptr;
         if (!o.point.empty()) {
           const ComplexPoint z = point_for(o.point, d, "point");
           point = format_point(z);
           inside = g.contains(z);
         }
         r.table.add({to_string(d), format_point(p), o.level, o.scaled, describe(g), point, inside, o.seed});
         return r;
       }},
      {"moment", "monomial moment, the integral of |z^alpha|^2 over D",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         a.add_option("--alpha", o.alpha, "multi-index, entries joined by '_'")->required();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const MultiIndex alpha = parse_multi_index(o.alpha);
         if (alpha.size() != d.dim()) throw InvalidArgument("multi-index length does not match domain");
         const auto m = moment(d, alpha);
         Outcome r;
         r.table.columns = {"domain", "alpha", "moment", "status", "seed"};
         r.table.add({to_string(d), o.alpha, opt(m), m ? "finite" : "divergent", o.seed});
         return r;
       }},
      {"kernel", "Bergman kernel K_D(w) on the diagonal",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_point(a, o); add_cap(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         return Outcome{kernel_table({"domain", "point"}, {to_string(d), format_point(w)},
                                     kernel(d, w, cap_for(o, d.dim())), o.seed)};
       }},
      {"kernel-sublevel", "Bergman kernel of {G < a} (or D_a with --scaled) at a point",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_pole(a, o);
         add_point(a, o);
         add_cap(a, o);
         a.add_option("--level", o.level, "sublevel height a <= 0")->required();
         a.add_flag("--scaled", o.scaled, "use D_a instead of {G < a}");
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint p = point_for(o.pole, d, "pole");
         const ComplexPoint w = point_for(o.point, d, "point");
         const SublevelGeometry g = o.scaled ? scaled_sublevel(d, p, o.level) : sublevel_set(d, p, o.level);
         return Outcome{kernel_table({"domain", "pole", "level", "scaled", "point"},
                                     {to_string(d), format_point(p), o.level, o.scaled, format_point(w)},
                                     kernel_on_sublevel(g, w, cap_for(o, d.dim())), o.seed)};
       }},
      {"kernel-balanced", "closed formula for K^H_D(0) on a balanced Reinhardt domain",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_poly(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const HomogeneousPoly H = poly_for(o.poly, d);
         Outcome r;
         r.table.columns = {"domain", "poly", "value", "seed"};
         r.table.add({to_string(d), print_poly(H), kernel_h_balanced(d, H), o.seed});
         return r;
       }},
      {"kernel-h", "higher-order kernel K^H_D(w) by constrained projection",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_point(a, o); add_poly(a, o); add_cap(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const HomogeneousPoly H = poly_for(o.poly, d);
         return Outcome{kernel_table({"domain", "point", "poly"}, {to_string(d), format_point(w), print_poly(H)},
                                     kernel_h(d, w, H, cap_for(o, d.dim())), o.seed)};
       }},
      {"kernel-k", "K^(k)(w; X), the kernel for H = (X . z)^k",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_point(a, o);
         add_vector(a, o);
         add_cap(a, o);
         a.add_option("--k", o.k, "order k >= 0")->required();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const ComplexPoint X = point_for(o.vector, d, "vector");
         return Outcome{kernel_table({"domain", "point", "vector", "k"},
                                     {to_string(d), format_point(w), format_point(X), o.k},
                                     kernel_k(d, w, X, o.k, cap_for(o, d.dim())), o.seed)};
       }},
      {"metric", "Bergman metric beta_D(w; X)",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_point(a, o); add_vector(a, o); add_cap(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const ComplexPoint X = point_for(o.vector, d, "vector");
         const int cap = cap_for(o, d.dim());
         Outcome r;
         r.table.columns = {"domain", "point", "vector", "degree_cap", "value", "seed"};
         r.table.add({to_string(d), format_point(w), format_point(X), cap, bergman_metric(d, w, X, cap), o.seed});
         return r;
       }},
      {"azukawa", "Azukawa pseudometric A_D(w; X); --ladder adds the numeric limit cross-check",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_point(a, o);
         add_vector(a, o);
         a.add_flag("--ladder", o.ladder, "evaluate the lambda ladder");
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const ComplexPoint X = point_for(o.vector, d, "vector");
         Outcome r;
         r.table.columns = {"domain", "point", "vector", "value"};
         std::vector<json> row{to_string(d), format_point(w), format_point(X), azukawa(d, w, X)};
         if (o.ladder) {
           const LadderResult l = azukawa_ladder(d, w, X);
           for (const char* c : {"lambda1", "lambda2", "lambda3", "rung1", "rung2", "rung3", "extrapolated",
                                 "spread", "ladder_status"}) {
             r.table.columns.push_back(c);
           }
           for (double x : l.lambdas) row.push_back(x);
           for (double x : l.values) row.push_back(x);
           row.push_back(l.extrapolated);
           row.push_back(l.spread);
           row.push_back(l.stable ? "stable" : "ladder unstable");
         }
         r.table.columns.push_back("seed");
         row.push_back(o.seed);
         r.table.add(std::move(row));
         return r;
       }},
      {"indicatrix", "membership of X in the Azukawa indicatrix I_D(w)",
       [](CLI::App& a, Options& o) { add_domain(a, o); add_point(a, o); add_vector(a, o); },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const ComplexPoint X = point_for(o.vector, d, "vector");
         Outcome r;
         r.table.columns = {"domain", "point", "vector", "inside", "seed"};
         r.table.add({to_string(d), format_point(w), format_point(X), indicatrix_contains(d, w, X), o.seed});
         return r;
       }},
      {"indicatrix-vol", "Monte Carlo volume of I_D(w) (with the closed form alongside)",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_point(a, o);
         add_samples(a, o, 100000, "Monte Carlo samples");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         if (o.samples == 0) throw InvalidArgument("--samples must be positive");
         const auto est = indicatrix_volume(d, w, o.samples, o.seed);
         const auto exact = indicatrix_volume_exact(d, w);
         Outcome r;
         r.table.columns = {"domain", "point", "n_samples", "mean", "std_error", "box_volume", "hits",
                            "closed_form", "status", "seed"};
         if (!est) {
           r.table.add({to_string(d), format_point(w), o.samples, nullptr, nullptr, nullptr, nullptr, nullptr,
                        "infinite/unbounded", o.seed});
         } else {
           r.table.add({to_string(d), format_point(w), est->n_samples, est->mean, est->std_error, est->box_volume,
                        est->hits, opt(exact), "finite", o.seed});
         }
         return r;
       }},
      {"cr-lower", "monomial lower bound for the k-th Caratheodory-Reiffen pseudometric at 0",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_point(a, o);
         add_vector(a, o);
         a.add_option("--k", o.k, "order k >= 1")->required();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const ComplexPoint X = point_for(o.vector, d, "vector");
         Outcome r;
         r.table.columns = {"domain", "point", "vector", "k", "value", "seed"};
         r.table.add({to_string(d), format_point(w), format_point(X), o.k, cr_lower(d, w, X, o.k), o.seed});
         return r;
       }},
      {"suita", "Suita functional F_D(w) = (K vol I_D)^(1/n) with confidence interval",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_point(a, o);
         add_cap(a, o);
         add_samples(a, o, 100000, "Monte Carlo samples (0 = closed-form volume)");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint w = point_for(o.point, d, "point");
         const SuitaValue f = suita_functional(d, w, o.samples, o.seed, cap_for(o, d.dim()));
         Outcome r;
         r.table.columns = {"domain", "point", "n_samples", "f_value", "sigma", "ci_low", "ci_high",
                            "kernel", "volume", "volume_std_error", "status", "note", "seed"};
         const char* status = f.status == SuitaStatus::inconclusive ? "inconclusive" : f.violation ? "violation" : "ok";
         const json volume = f.volume_infinite ? json(nullptr) : json(f.volume_part.mean);
         r.table.add({to_string(d), format_point(w), o.samples,
                      std::isnan(f.f_value) ? json(nullptr) : json(f.f_value), f.sigma,
                      std::isnan(f.ci_low) ? json(nullptr) : json(f.ci_low),
                      std::isnan(f.ci_high) ? json(nullptr) : json(f.ci_high), f.kernel_part.best(), volume,
                      f.volume_part.std_error, status, f.note, o.seed});
         r.code = f.violation ? 1 : 0;
         return r;
       }},
      {"scan-monotone", "K^H of D_a at the pole along a level grid, plus the indicatrix endpoint",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_pole(a, o);
         add_poly(a, o);
         add_cap(a, o);
         a.add_option("--grid", o.grid, "increasing levels a <= 0, e.g. --grid=-3,-2,-1")->required();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint p = point_for(o.pole, d, "pole");
         const MonotonicityScan s = monotonicity_scan(d, p, poly_for(o.poly, d), parse_grid(o.grid), cap_for(o, d.dim()));
         Outcome r;
         r.table.columns = {"row", "config", "level", "lhs", "rhs", "margin", "tolerance", "violated", "verdict",
                            "max_deviation", "seed"};
         const char* verdict = to_string(s.report.verdict);
         for (std::size_t i = 0; i < s.values.size(); ++i) {
           r.table.add({"value", "level=" + std::to_string(i), s.a_grid[i], s.values[i], nullptr, nullptr, nullptr,
                        nullptr, verdict, s.max_deviation, o.seed});
         }
         r.table.add({"endpoint", "level=-inf", nullptr, s.endpoint, nullptr, nullptr, nullptr, nullptr, verdict,
                      s.max_deviation, o.seed});
         for (const auto& c : s.report.checks) {
           r.table.add({"check", c.config, nullptr, c.lhs, c.rhs, c.margin, c.tolerance, c.violated, verdict,
                        s.max_deviation, o.seed});
         }
         r.table.notes = s.report.notes;
         r.code = verdict_code(s.report.verdict);
         return r;
       }},
      {"probe-logconvex", "second differences of log K^H_{D_a}; evidence only",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_pole(a, o);
         add_poly(a, o);
         add_cap(a, o);
         a.add_option("--grid", o.grid, "at least three increasing levels a <= 0")->required();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint p = point_for(o.pole, d, "pole");
         const ProbeReport rep = log_convexity_probe(d, p, poly_for(o.poly, d), parse_grid(o.grid), cap_for(o, d.dim()));
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"probe-convexity", "convexity of -log vol I_D along random segments",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_count(a, o, "--pairs", 20, "random point pairs");
         o.t_grid = "0.25,0.5,0.75";
         a.add_option("--t-grid", o.t_grid, "interpolation parameters in [0, 1]")->capture_default_str();
         add_samples(a, o, 0, "Monte Carlo samples per volume (0 = closed form)");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ProbeReport rep = volume_convexity_probe(d, o.count, parse_grid(o.t_grid), o.samples, o.seed);
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"probe-psh", "sub-mean-value checks of -log vol I_D or log A_D on random complex lines",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         add_count(a, o, "--lines", 20, "random complex lines");
         o.radii = "0.05,0.2";
         a.add_option("--radii", o.radii, "circle radii (shrunk to stay inside)")->capture_default_str();
         add_samples(a, o, 0, "Monte Carlo samples per volume (0 = closed form)");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
         a.add_option("--target", o.target, "vol or azukawa")
             ->check(CLI::IsMember({"vol", "azukawa"}))
             ->capture_default_str();
         a.add_option("--points", o.points, "circle quadrature points")->capture_default_str();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const PshTarget target = o.target == "vol" ? PshTarget::volume : PshTarget::azukawa;
         const ProbeReport rep = volume_psh_probe(d, o.count, parse_grid(o.radii), o.samples, o.seed, target, o.points);
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"boundary-scan", "F_D along a ray towards the boundary",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         a.add_option("--direction", o.direction, "ray direction")->required();
         o.t_grid = "0.9,0.99,0.999";
         a.add_option("--t-grid", o.t_grid, "ray parameters")->capture_default_str();
         add_samples(a, o, 100000, "Monte Carlo samples per point (0 = closed form)");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
         add_cap(a, o);
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const ComplexPoint dir = point_for(o.direction, d, "direction");
         const ProbeReport rep =
             boundary_limit_scan(d, dir, parse_grid(o.t_grid), o.samples, o.seed, cap_for(o, d.dim()));
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"dimension", "count of square-integrable monomials on D, D_a and I_D(0)",
       [](CLI::App& a, Options& o) {
         add_domain(a, o);
         o.grid = "-2,-1,-0.5";
         a.add_option("--cap", o.cap, "degree cap")->required()->check(CLI::Range(0, 200));
         a.add_option("--grid", o.grid, "levels a for D_a")->capture_default_str();
       },
       [](const Options& o) {
         const DomainSpec d = parse_domain(o.domain);
         const DimensionReport rep = dimension_probe(d, o.cap, parse_grid(o.grid));
         std::string scaled;
         for (std::size_t i = 0; i < rep.scaled_counts.size(); ++i) {
           scaled += (i > 0 ? ";" : "") + format_double(rep.a_grid[i]) + ":" + std::to_string(rep.scaled_counts[i]);
         }
         Outcome r;
         r.table.columns = {"domain", "degree_cap", "count", "total", "classification", "scaled_counts",
                            "indicatrix_count", "counts_equal", "seed"};
         r.table.add({to_string(d), o.cap, rep.count, rep.total, to_string(rep.classification), scaled,
                      rep.indicatrix_count ? json(*rep.indicatrix_count) : json(nullptr), rep.counts_equal, o.seed});
         r.code = rep.counts_equal ? 0 : 1;
         return r;
       }},
      {"probe-transform", "transformation rule for K^H under disc automorphisms",
       [](CLI::App& a, Options& o) {
         add_count(a, o, "--configs", 20, "random configurations");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
         o.cap = 60;
         a.add_option("--cap", o.cap, "series degree cap")->capture_default_str()->check(CLI::Range(0, 200));
       },
       [](const Options& o) {
         const ProbeReport rep = transformation_rule_probe(o.count, o.seed, o.cap);
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"probe-product", "product rule for K^H on products of balanced domains",
       [](CLI::App& a, Options& o) {
         add_count(a, o, "--configs", 20, "random configurations");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
       },
       [](const Options& o) {
         const ProbeReport rep = product_rule_probe(o.count, o.seed);
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"probe-suita", "F_D(w) >= 1 on random catalog (domain, point) pairs",
       [](CLI::App& a, Options& o) {
         add_count(a, o, "--pairs", 100, "random pairs");
         add_samples(a, o, 100000, "Monte Carlo samples per volume (0 = closed form)");
         a.add_option("--seed", o.seed, "random seed")->capture_default_str();
         add_cap(a, o);
       },
       [](const Options& o) {
         const ProbeReport rep = suita_inequality_probe(o.count, o.samples, o.seed, o.cap >= 0 ? o.cap : 0);
         return Outcome{probe_table(rep), verdict_code(rep.verdict)};
       }},
      {"suite", "deterministic end-to-end check suite",
       [](CLI::App& a, Options& o) { a.add_option("--seed", o.seed, "random seed")->capture_default_str(); },
       [](const Options& o) {
         bool passed = true;
         Outcome r{run_suite(o.seed, passed)};
         r.code = passed ? 0 : 1;
         return r;
       }},
  };
  return cmds;
}

}  // namespace

DomainSpec parse_domain(std::string_view text) {
  Cursor c(text);
  DomainSpec d = domain_expr(c);
  c.expect_end();
  return d;
}

std::string print_domain(const DomainSpec& domain) { return to_string(domain); }

Complex parse_complex(std::string_view text) {
  Cursor c(text);
  const Complex z = c.complex();
  c.expect_end();
  return z;
}

ComplexPoint parse_point(std::string_view text) {
  Cursor c(text);
  std::vector<Complex> coords{c.complex()};
  while (c.accept(',')) coords.push_back(c.complex());
  c.expect_end();
  if (coords.size() > kMaxDimension) throw ParseError(1, "more than " + std::to_string(kMaxDimension) + " coordinates");
  return ComplexPoint(std::move(coords));
}

std::vector<double> parse_grid(std::string_view text) {
  Cursor c(text);
  std::vector<double> xs{c.number()};
  while (c.accept(',')) xs.push_back(c.number());
  c.expect_end();
  return xs;
}

MultiIndex parse_multi_index(std::string_view text) {
  Cursor c(text);
  MultiIndex alpha = multi_index_expr(c);
  c.expect_end();
  return alpha;
}

HomogeneousPoly parse_poly(std::string_view text) {
  Cursor c(text);
  std::map<MultiIndex, Complex> terms;
  std::optional<std::size_t> n;
  std::optional<int> degree;
  do {
    const std::size_t at = c.column();
    const MultiIndex alpha = multi_index_expr(c);
    if (n && alpha.size() != *n) throw ParseError(at, "terms have different numbers of variables");
    if (degree && alpha.degree() != *degree) throw ParseError(at, "polynomial is not homogeneous");
    if (terms.count(alpha)) throw ParseError(at, "repeated multi-index");
    n = alpha.size();
    degree = alpha.degree();
    c.expect(':');
    terms[alpha] = c.complex();
  } while (c.accept(','));
  c.expect_end();
  HomogeneousPoly H(*n, *degree, terms);
  if (H.is_zero()) throw ParseError(1, "polynomial has no nonzero coefficient");
  return H;
}

std::string print_poly(const HomogeneousPoly& H) {
  std::string out;
  // Highest exponent of z_1 first, matching the graded order used elsewhere.
  for (auto it = H.terms().rbegin(); it != H.terms().rend(); ++it) {
    if (!out.empty()) out += ',';
    const MultiIndex& alpha = it->first;
    for (std::size_t j = 0; j < alpha.size(); ++j) out += (j > 0 ? "_" : "") + std::to_string(alpha[j]);
    out += ":" + format_complex(it->second);
  }
  return out;
}

void Table::add(std::vector<json> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i > 0 ? "," : "") + csv_escape(table.columns[i]);
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i > 0 ? "," : "") + render_cell(row[i]);
    out += "\r\n";
  }
  return out;
}

std::string to_json(const Table& table) {
  json doc;
  doc["columns"] = table.columns;
  doc["rows"] = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
    doc["rows"].push_back(std::move(obj));
  }
  doc["notes"] = table.notes;
  return doc.dump(2) + "\n";
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : commands()) v.push_back(c.name);
    return v;
  }();
  return names;
}

const std::vector<std::pair<std::string, std::string>>& operation_coverage() {
  static const std::vector<std::pair<std::string, std::string>> map = {
      {"gauge", "gauge"},
      {"contains", "contains"},
      {"bounding_box", "bbox"},
      {"green", "green"},
      {"sublevel_set", "sublevel"},
      {"scaled_sublevel", "sublevel"},
      {"moment", "moment"},
      {"kernel", "kernel"},
      {"kernel_on_sublevel", "kernel-sublevel"},
      {"kernel_h_balanced", "kernel-balanced"},
      {"kernel_h", "kernel-h"},
      {"kernel_k", "kernel-k"},
      {"bergman_metric", "metric"},
      {"azukawa", "azukawa"},
      {"azukawa_ladder", "azukawa"},
      {"indicatrix_contains", "indicatrix"},
      {"indicatrix_volume", "indicatrix-vol"},
      {"cr_lower", "cr-lower"},
      {"suita_functional", "suita"},
      {"monotonicity_scan", "scan-monotone"},
      {"log_convexity_probe", "probe-logconvex"},
      {"volume_convexity_probe", "probe-convexity"},
      {"volume_psh_probe", "probe-psh"},
      {"boundary_limit_scan", "boundary-scan"},
      {"dimension_probe", "dimension"},
      {"transformation_rule_probe", "probe-transform"},
      {"product_rule_probe", "probe-product"},
      {"suita_inequality_probe", "probe-suita"},
      {"run_suite", "suite"},
  };
  return map;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holomorphic invariants of model pseudoconvex domains"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand help for every subcommand");
  // Each subcommand owns its option block so per-command defaults never leak between them.
  std::vector<std::unique_ptr<Options>> blocks;
  std::map<const CLI::App*, std::pair<const Command*, Options*>> lookup;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    blocks.push_back(std::make_unique<Options>());
    Options& o = *blocks.back();
    cmd.options(*sub, o);
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", o.out, "write data to this path instead of standard output");
    lookup[sub] = {&cmd, &o};
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const auto [cmd_ptr, opts] = lookup.at(app.get_subcommands().front());
  const Command& cmd = *cmd_ptr;
  const Options* options = opts;
  Outcome result;
  try {
    result = cmd.handler(*options);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  const std::string data = options->format == "json" ? to_json(result.table) : to_csv(result.table);
  if (options->format == "csv") {
    for (const auto& n : result.table.notes) err << "note: " << n << "\n";
  }
  if (options->out.empty()) {
    out << data;
    out.flush();
  } else {
    std::ofstream file(options->out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << options->out << " for writing\n";
      return 2;
    }
    file << data;
  }
  return result.code;
}

}  // namespace scv::cli
