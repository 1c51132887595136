#include "minkgauss/surface.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "minkgauss/error.hpp"

namespace minkgauss {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Column (1-based) of sub within line, both views into the same buffer.
std::size_t column_of(std::string_view line, std::string_view sub) {
  return static_cast<std::size_t>(sub.data() - line.data()) + 1;
}

std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string real_text(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

void validate(const SurfaceDef& def) {
  const Domain& d = def.domain;
  if (!(d.s_min < d.s_max) || !(d.t_min < d.t_max)) {
    throw Error(ErrorCode::ValidationError,
                "empty domain: need s_min < s_max and t_min < t_max");
  }
  for (int i = 0; i < 4; ++i) {
    for (const auto& name : identifiers(def.components[static_cast<std::size_t>(i)])) {
      if (!def.params.contains(name)) {
        throw Error(ErrorCode::ValidationError,
                    "unbound parameter '" + name + "' in component x" +
                        std::to_string(i));
      }
    }
  }
}

SurfaceDef parse_surface(std::string_view text) {
  SurfaceDef def;
  std::array<bool, 4> have{};
  bool have_domain = false;
  bool have_name = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, column_of(raw, line),
                       "line " + std::to_string(line_no) +
                           ": expected '<key> = <value>'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::size_t value_col =
        value.empty() ? column_of(raw, line) + eq + 1 : column_of(raw, value);

    auto fail = [&](std::size_t col, const std::string& what) -> ParseError {
      return ParseError(line_no, col,
                        "line " + std::to_string(line_no) + ", column " +
                            std::to_string(col) + ": " + what);
    };

    if (key.starts_with("param") && key.size() > 5 &&
        (key[5] == ' ' || key[5] == '\t')) {
      const std::string_view pname = trim(key.substr(5));
      if (pname.empty() || pname == "s" || pname == "t") {
        throw fail(column_of(raw, key), "invalid parameter name");
      }
      const auto v = parse_real(value);
      if (!v) throw fail(value_col, "expected a real number");
      if (!def.params.emplace(std::string(pname), *v).second) {
        throw fail(column_of(raw, pname),
                   "duplicate parameter '" + std::string(pname) + "'");
      }
      continue;
    }

    if (key == "name") {
      if (have_name) throw fail(column_of(raw, key), "duplicate key 'name'");
      def.name = std::string(value);
      have_name = true;
    } else if (key == "domain") {
      if (have_domain) throw fail(column_of(raw, key), "duplicate key 'domain'");
      std::array<double, 4> box{};
      std::size_t n = 0;
      std::size_t p = 0;
      while (p < value.size()) {
        while (p < value.size() && (value[p] == ' ' || value[p] == '\t')) ++p;
        if (p >= value.size()) break;
        std::size_t q = p;
        while (q < value.size() && value[q] != ' ' && value[q] != '\t') ++q;
        const std::string_view field = value.substr(p, q - p);
        const auto v = parse_real(field);
        if (!v) throw fail(column_of(raw, field), "expected a real number");
        if (n == 4) throw fail(column_of(raw, field), "domain takes 4 numbers");
        box[n++] = *v;
        p = q;
      }
      if (n != 4) throw fail(value_col, "domain takes 4 numbers");
      def.domain = {box[0], box[1], box[2], box[3]};
      have_domain = true;
    } else if (key.size() == 2 && key[0] == 'x' && key[1] >= '0' &&
               key[1] <= '3') {
      const auto i = static_cast<std::size_t>(key[1] - '0');
      if (have[i]) {
        throw fail(column_of(raw, key),
                   "duplicate component '" + std::string(key) + "'");
      }
      try {
        def.components[i] = parse(value);
      } catch (const SyntaxError& e) {
        throw fail(value_col + e.offset(), e.what());
      } catch (const Error& e) {
        throw fail(value_col, e.what());
      }
      have[i] = true;
    } else {
      throw fail(column_of(raw, key), "unknown key '" + std::string(key) + "'");
    }
  }

  const auto count = static_cast<int>(std::count(have.begin(), have.end(), true));
  if (count != 4) {
    throw Error(ErrorCode::ValidationError,
                "expected 4 components (x0..x3), found " +
                    std::to_string(count));
  }
  if (!have_domain) {
    throw Error(ErrorCode::ValidationError, "missing 'domain' line");
  }
  validate(def);
  return def;
}

SurfaceDef load_surface(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError,
                "cannot open surface file '" + file.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_surface(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), file.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.what());
  }
}

std::string format_surface(const SurfaceDef& def) {
  std::ostringstream out;
  out << "name = " << def.name << '\n';
  for (std::size_t i = 0; i < 4; ++i) {
    out << 'x' << i << " = " << format(def.components[i]) << '\n';
  }
  out << "domain = " << real_text(def.domain.s_min) << ' '
      << real_text(def.domain.s_max) << ' ' << real_text(def.domain.t_min)
      << ' ' << real_text(def.domain.t_max) << '\n';
  for (const auto& [k, v] : def.params) {
    out << "param " << k << " = " << real_text(v) << '\n';
  }
  return out.str();
}

JetVec4 immersion_jets(const SurfaceDef& def, ParamPoint p, int order) {
  return {eval_jet(def.components[0], p, def.params, order),
          eval_jet(def.components[1], p, def.params, order),
          eval_jet(def.components[2], p, def.params, order),
          eval_jet(def.components[3], p, def.params, order)};
}

Vec4 immersion_value(const SurfaceDef& def, ParamPoint p) {
  return {eval_real(def.components[0], p, def.params),
          eval_real(def.components[1], p, def.params),
          eval_real(def.components[2], p, def.params),
          eval_real(def.components[3], p, def.params)};
}

}  // namespace minkgauss
