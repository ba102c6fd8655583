#include "ncause/style.hpp"

#include <algorithm>

namespace ncause {

Style fillWith(const std::string& color) {
  return {{"style", "filled"}, {"fillcolor", color}};
}

Style mergeStyles(Style base, const Style& over) {
  base.insert(base.end(), over.begin(), over.end());
  return base;
}

Style resolveStyle(const Style& style) {
  Style out;
  for (const auto& [key, value] : style) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const StyleAttr& a) { return a.first == key; });
    if (it == out.end()) {
      out.emplace_back(key, value);
    } else {
      it->second = value;
    }
  }
  return out;
}

bool hasStyleKey(const Style& style, const std::string& key) {
  return std::any_of(style.begin(), style.end(),
                     [&](const StyleAttr& a) { return a.first == key; });
}

}  // namespace ncause
