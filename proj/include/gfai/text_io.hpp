#pragma once

// Line-oriented theory and context files.
//
//   scale 2
//   logic lukasiewicz | goedel | bl 0,0.5,1
//   hedge identity | globalization | table 0,0,1
//   attributes p q r
//   {0.5/p} => {p, q}            (theory files)
//   object x1: 1 0.5 0           (context files)
//
// '#' starts a comment. Header lines precede the body; scale defaults to 1,
// logic to lukasiewicz, hedge to identity.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gfai/context.hpp"

namespace gfai {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct HeaderLines {
  std::string scale = "1", logic = "lukasiewicz", hedge = "identity";
  std::vector<std::string> attributes;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  /// Next non-blank line without comment; false at EOF.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = std::string(trim(line));
      if (!line.empty()) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(number_) + ": " + what);
  }
  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

inline bool is_header_key(const std::string& key) {
  return key == "scale" || key == "logic" || key == "hedge" || key == "attributes";
}

}  // namespace detail

/// Parses the logic/hedge header values into a ChainSpec.
inline ChainSpec parse_chain_spec(const std::string& scale_text, const std::string& logic_text,
                                  const std::string& hedge_text) {
  ChainSpec spec;
  std::uint64_t n = 0;
  if (!detail::parse_uint(detail::trim(scale_text), n) || n < 1 || n > kMaxScale)
    throw ParseError("scale must be an integer in 1.." + std::to_string(kMaxScale));
  spec.scale = static_cast<int>(n);

  const auto logic = detail::words(logic_text);
  if (logic.empty()) throw ParseError("missing logic");
  if (logic[0] == "lukasiewicz") {
    spec.tnorm = TNorm::lukasiewicz;
  } else if (logic[0] == "goedel" || logic[0] == "godel") {
    spec.tnorm = TNorm::goedel;
  } else if (logic[0] == "bl") {
    spec.tnorm = TNorm::ordinal_sum;
    std::string joined;
    for (std::size_t i = 1; i < logic.size(); ++i) joined += logic[i];
    if (joined.empty()) throw ParseError("bl needs a list of idempotent degrees");
    for (const auto& d : detail::split(joined, ',')) spec.idempotents.push_back(parse_degree(d, spec.scale));
  } else {
    throw ParseError("unknown logic '" + logic[0] + "'");
  }
  if (logic[0] != "bl" && logic.size() > 1) throw ParseError("unexpected text after logic '" + logic[0] + "'");

  const auto hedge = detail::words(hedge_text);
  if (hedge.empty()) throw ParseError("missing hedge");
  if (hedge[0] == "identity") {
    spec.hedge = HedgeKind::identity;
  } else if (hedge[0] == "globalization") {
    spec.hedge = HedgeKind::globalization;
  } else if (hedge[0] == "table") {
    spec.hedge = HedgeKind::table;
    std::string joined;
    for (std::size_t i = 1; i < hedge.size(); ++i) joined += (i > 1 ? "," : "") + hedge[i];
    if (joined.empty()) throw ParseError("table hedge needs one degree per chain element");
    for (const auto& d : detail::split(joined, ','))
      if (!d.empty()) spec.hedge_table.push_back(parse_degree(d, spec.scale));
  } else {
    throw ParseError("unknown hedge '" + hedge[0] + "'");
  }
  if (hedge[0] != "table" && hedge.size() > 1) throw ParseError("unexpected text after hedge '" + hedge[0] + "'");
  return spec;
}

struct TheoryFile {
  ChainPtr chain;
  UniversePtr universe;
  Theory theory;
};

namespace detail {

/// Reads header lines; returns with `line` holding the first body line (or
/// empty at EOF).
inline HeaderLines read_header(LineReader& reader, std::string& line) {
  HeaderLines h;
  line.clear();
  while (reader.next(line)) {
    const auto space = line.find_first_of(" \t");
    const std::string key = line.substr(0, space);
    if (!is_header_key(key)) return h;
    const std::string value = space == std::string::npos ? "" : std::string(trim(line.substr(space)));
    if (key == "scale") h.scale = value;
    else if (key == "logic") h.logic = value;
    else if (key == "hedge") h.hedge = value;
    else h.attributes = words(value);
    line.clear();
  }
  return h;
}

inline std::pair<ChainPtr, UniversePtr> resolve_header(const HeaderLines& h, const LineReader& reader) {
  if (h.attributes.empty()) reader.fail("missing 'attributes' line");
  try {
    return {ResiduatedChain::make(parse_chain_spec(h.scale, h.logic, h.hedge)),
            AttributeUniverse::make(h.attributes)};
  } catch (const ParseError& e) {
    reader.fail(e.what());
  }
}

}  // namespace detail

inline TheoryFile read_theory(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  const auto header = detail::read_header(reader, line);
  auto [chain, universe] = detail::resolve_header(header, reader);
  TheoryFile out{chain, universe, Theory(universe, chain)};
  for (bool more = !line.empty(); more; more = reader.next(line)) {
    try {
      out.theory.add(parse_implication(line, universe, chain));
    } catch (const ParseError& e) {
      reader.fail(e.what());
    }
  }
  return out;
}

inline FormalContext read_context(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  const auto header = detail::read_header(reader, line);
  auto [chain, universe] = detail::resolve_header(header, reader);
  std::vector<std::string> objects;
  std::vector<Index> table;
  for (bool more = !line.empty(); more; more = reader.next(line)) {
    const auto w = detail::words(line);
    if (w.empty() || w[0] != "object") reader.fail("expected 'object <name>: degrees'");
    const auto colon = line.find(':');
    if (colon == std::string::npos) reader.fail("missing ':' after object name");
    objects.emplace_back(detail::trim(std::string_view(line).substr(6, colon - 6)));
    const auto degrees = detail::words(line.substr(colon + 1));
    if (degrees.size() != universe->size())
      reader.fail("object '" + objects.back() + "' has " + std::to_string(degrees.size()) + " degrees, expected " +
                  std::to_string(universe->size()));
    try {
      for (const auto& d : degrees) table.push_back(static_cast<Index>(parse_degree(d, chain->scale())));
    } catch (const ParseError& e) {
      reader.fail(e.what());
    }
  }
  if (objects.empty()) throw ParseError("context has no objects");
  return FormalContext(AttributeUniverse::make(std::move(objects)), universe, chain, std::move(table));
}

template <class Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline TheoryFile read_theory_file(const std::string& path) {
  return read_file(path, [](std::istream& in) { return read_theory(in); });
}
inline FormalContext read_context_file(const std::string& path) {
  return read_file(path, [](std::istream& in) { return read_context(in); });
}

inline void write_header(std::ostream& os, const ResiduatedChain& chain, const AttributeUniverse& universe) {
  os << chain.describe() << "\nattributes";
  for (const auto& name : universe.names()) os << ' ' << name;
  os << '\n';
}

inline void write_theory(std::ostream& os, const Theory& theory) {
  write_header(os, *theory.chain(), *theory.universe());
  for (const auto& imp : theory) os << format_implication(imp) << '\n';
}

inline void write_context(std::ostream& os, const FormalContext& context) {
  write_header(os, *context.chain(), *context.attributes());
  const int n = context.chain()->scale();
  for (std::size_t x = 0; x < context.object_count(); ++x) {
    os << "object " << context.objects()->name(x) << ':';
    for (std::size_t y = 0; y < context.attribute_count(); ++y)
      os << ' ' << format_degree(context.incidence(x, y).index(), n);
    os << '\n';
  }
}

}  // namespace gfai
