#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ncause {

/// One GraphViz attribute (name-value pair of strings).
using StyleAttr = std::pair<std::string, std::string>;

/// Ordered attribute list. Later pairs override earlier ones on the same
/// key when the style is rendered.
using Style = std::vector<StyleAttr>;

/// Style that fills a node with the given color.
Style fillWith(const std::string& color);

/// Concatenates two styles; attributes of `over` take precedence at render
/// time because they come later.
Style mergeStyles(Style base, const Style& over);

/// Collapses duplicate keys: first-seen key order, last-written value.
Style resolveStyle(const Style& style);

/// True when the style carries the given key.
bool hasStyleKey(const Style& style, const std::string& key);

}  // namespace ncause
