#include "trellis_lab/spec_file.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t to_size(const std::string& w, std::size_t line) {
  if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected a non-negative integer, got '" + w + "'");
  }
  try {
    return std::stoul(w);
  } catch (const std::exception&) {
    throw ParseError(line, "number out of range: '" + w + "'");
  }
}

std::vector<std::size_t> sizes(const std::vector<std::string>& ws, std::size_t from, std::size_t line) {
  std::vector<std::size_t> out;
  for (std::size_t k = from; k < ws.size(); ++k) out.push_back(to_size(ws[k], line));
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t at = 0;
  while (true) {
    const auto next = s.find(sep, at);
    parts.push_back(s.substr(at, next == std::string_view::npos ? std::string_view::npos : next - at));
    if (next == std::string_view::npos) break;
    at = next + 1;
  }
  return parts;
}

struct Section {
  std::size_t index;
  std::size_t line;
  std::vector<std::pair<std::size_t, std::string>> rows;
};

}  // namespace

Vec parse_digits(const Field& f, std::string_view s, std::size_t line) {
  s = trim(s);
  Vec v;
  if (s.empty()) return v;
  auto digit = [&](std::string_view d) {
    const std::string w(trim(d));
    const std::size_t x = to_size(w, line);
    if (x >= f.p()) throw ParseError(line, "entry " + w + " is not in GF(" + std::to_string(f.p()) + ")");
    return static_cast<Elem>(x);
  };
  if (f.p() > 7 || s.find(',') != std::string_view::npos) {
    for (auto part : split(s, ',')) v.push_back(digit(part));
  } else {
    for (char c : s) v.push_back(digit(std::string_view(&c, 1)));
  }
  return v;
}

Trellis parse_spec(std::string_view text) {
  std::optional<std::uint32_t> p;
  std::optional<std::size_t> length;
  std::optional<std::vector<std::size_t>> symbols, states;
  std::vector<Section> sections;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> generators;
  std::map<std::string, std::size_t> seen;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto ws = words(line);
    const std::string& key = ws[0];
    auto once = [&]() {
      if (seen.count(key)) throw ParseError(line_no, "'" + key + "' given twice");
      seen[key] = line_no;
    };
    if (key == "field") {
      once();
      if (ws.size() != 2) throw ParseError(line_no, "usage: field <prime>");
      const std::size_t q = to_size(ws[1], line_no);
      try {
        Field check(static_cast<std::uint32_t>(q));
        (void)check;
      } catch (const std::invalid_argument&) {
        throw ParseError(line_no, "field size " + ws[1] + " is not a supported prime");
      }
      p = static_cast<std::uint32_t>(q);
    } else if (key == "length") {
      once();
      if (ws.size() != 2) throw ParseError(line_no, "usage: length <m>");
      length = to_size(ws[1], line_no);
    } else if (key == "symbols") {
      once();
      symbols = sizes(ws, 1, line_no);
    } else if (key == "states") {
      once();
      states = sizes(ws, 1, line_no);
    } else if (key == "constraint") {
      if (ws.size() != 2) throw ParseError(line_no, "usage: constraint <index>");
      sections.push_back({to_size(ws[1], line_no), line_no, {}});
    } else if (key == "generator") {
      if (ws.size() != 3) throw ParseError(line_no, "usage: generator <word> <start>:<len>");
      generators.push_back({line_no, ws});
    } else if (line.find('|') != std::string_view::npos) {
      if (sections.empty()) throw ParseError(line_no, "branch row outside a constraint section");
      sections.back().rows.push_back({line_no, std::string(line)});
    } else {
      throw ParseError(line_no, "unknown directive '" + key + "'");
    }
  }

  if (!p) throw ParseError(0, "missing 'field'");
  if (!symbols) throw ParseError(0, "missing 'symbols'");
  const Field f(*p);
  const std::size_t m = symbols->size();
  if (m == 0) throw ParseError(seen["symbols"], "a trellis needs at least one symbol position");
  if (length && *length != m) {
    throw ParseError(seen["length"], "length " + std::to_string(*length) + " disagrees with " + std::to_string(m) +
                                         " symbol dimensions");
  }

  if (!generators.empty()) {
    if (!sections.empty() || states) {
      throw ParseError(generators.front().first, "product form cannot be mixed with states or constraint sections");
    }
    std::size_t total = 0;
    for (auto d : *symbols) total += d;
    std::vector<Generator> gens;
    for (const auto& [ln, ws] : generators) {
      Vec word = parse_digits(f, ws[1], ln);
      if (word.size() != total) {
        throw ParseError(ln, "generator has " + std::to_string(word.size()) + " entries, expected " +
                                 std::to_string(total));
      }
      const auto parts = split(ws[2], ':');
      if (parts.size() != 2) throw ParseError(ln, "span must be written start:len");
      const std::size_t start = to_size(std::string(parts[0]), ln);
      const std::size_t len = to_size(std::string(parts[1]), ln);
      if (start >= m || len == 0 || len > m) throw ParseError(ln, "span " + ws[2] + " out of range");
      gens.push_back({std::move(word), Span::make(start, len, m)});
    }
    try {
      return product_of_generators(f, *symbols, gens);
    } catch (const PreconditionError& e) {
      throw ParseError(generators.front().first, e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(generators.front().first, e.what());
    }
  }

  if (!states) throw ParseError(0, "missing 'states' (or 'generator' lines)");
  if (states->size() != m) {
    throw ParseError(seen["states"], "expected " + std::to_string(m) + " state dimensions, got " +
                                         std::to_string(states->size()));
  }
  std::vector<std::optional<Subspace>> cs(m);
  for (const auto& sec : sections) {
    const std::size_t i = sec.index;
    if (i >= m) throw ParseError(sec.line, "constraint index " + std::to_string(i) + " out of range");
    if (cs[i]) throw ParseError(sec.line, "constraint " + std::to_string(i) + " given twice");
    const std::size_t n_in = (*states)[i], a = (*symbols)[i], n_out = (*states)[(i + 1) % m];
    std::vector<Vec> rows;
    for (const auto& [ln, text_row] : sec.rows) {
      const auto blocks = split(text_row, '|');
      if (blocks.size() != 3) throw ParseError(ln, "a branch row has three blocks: in|symbol|out");
      const std::size_t want[3] = {n_in, a, n_out};
      Vec row;
      for (int b = 0; b < 3; ++b) {
        const Vec part = parse_digits(f, blocks[b], ln);
        if (part.size() != want[b]) {
          static const char* names[3] = {"state-in", "symbol", "state-out"};
          throw ParseError(ln, std::string(names[b]) + " block has " + std::to_string(part.size()) +
                                   " entries, expected " + std::to_string(want[b]));
        }
        row.insert(row.end(), part.begin(), part.end());
      }
      rows.push_back(std::move(row));
    }
    cs[i] = Subspace::span(f, n_in + a + n_out, rows);
  }
  std::vector<Subspace> constraints;
  for (std::size_t i = 0; i < m; ++i) {
    if (!cs[i]) throw ParseError(0, "missing constraint " + std::to_string(i));
    constraints.push_back(*cs[i]);
  }
  Trellis t(f, *symbols, *states, std::move(constraints));
  const auto problems = validate(t);
  if (!problems.empty()) throw ParseError(0, "invalid trellis: " + problems.front());
  return t;
}

std::string serialize_spec(const Trellis& t) {
  const Field& f = t.field();
  const std::size_t m = t.length();
  std::ostringstream out;
  out << "field " << f.p() << "\n";
  out << "length " << m << "\n";
  out << "symbols";
  for (auto d : t.symbol_dims()) out << ' ' << d;
  out << "\nstates";
  for (auto d : t.state_dims()) out << ' ' << d;
  out << "\n";
  for (std::size_t i = 0; i < m; ++i) {
    out << "constraint " << i << "\n";
    const std::size_t n_in = t.state_dim(i), a = t.symbol_dim(i);
    for (const Vec& r : t.constraint(i).basis().to_rows()) {
      const std::span<const Elem> v(r);
      out << to_digits(f, v.subspan(0, n_in)) << '|' << to_digits(f, v.subspan(n_in, a)) << '|'
          << to_digits(f, v.subspan(n_in + a)) << "\n";
    }
  }
  return out.str();
}

Trellis load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

void save_spec(const std::filesystem::path& path, const Trellis& t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << serialize_spec(t);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace trellis_lab
