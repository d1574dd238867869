#pragma once

#include <initializer_list>
#include <string>

#include "gfai/gfai.hpp"

namespace testing_support {

using namespace gfai;

/// Universe + chain with text shortcuts for sets, implications and theories.
struct Lang {
  UniversePtr u;
  ChainPtr c;

  Lang(std::vector<std::string> names, ChainPtr chain) : u(AttributeUniverse::make(std::move(names))), c(std::move(chain)) {}

  FuzzySet s(const std::string& text) const { return parse_set(text, u, c); }
  Implication i(const std::string& text) const { return parse_implication(text, u, c); }
  Theory t(std::initializer_list<const char*> lines) const {
    Theory out(u, c);
    for (const char* l : lines) out.add(i(l));
    return out;
  }
  TruthDegree d(const std::string& text) const { return c->degree(parse_degree(text, c->scale())); }

  /// Context with objects o1..ok and rows given as degree text.
  FormalContext context(std::initializer_list<std::initializer_list<const char*>> rows) const {
    std::vector<Index> table;
    std::size_t k = 0;
    for (const auto& row : rows) {
      ++k;
      for (const char* v : row) table.push_back(static_cast<Index>(parse_degree(v, c->scale())));
    }
    std::vector<std::string> objects;
    for (std::size_t x = 1; x <= k; ++x) objects.push_back("o" + std::to_string(x));
    return FormalContext(AttributeUniverse::make(objects), u, c, table);
  }
};

inline std::vector<FuzzySet> sorted_sets(std::vector<FuzzySet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace testing_support
