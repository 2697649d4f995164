#pragma once

// Minimal helpers for the repo's tag-based tool dialect. This is not a
// general XML parser: the grammar is fixed (flat elements, no attributes,
// the five standard entities) and anything outside it is a parse failure
// surfaced by the caller.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace faaf::detail {

inline std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string xml_unescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '&') {
      auto rest = text.substr(i);
      if (rest.rfind("&amp;", 0) == 0) { out += '&'; i += 5; continue; }
      if (rest.rfind("&lt;", 0) == 0) { out += '<'; i += 4; continue; }
      if (rest.rfind("&gt;", 0) == 0) { out += '>'; i += 4; continue; }
      if (rest.rfind("&quot;", 0) == 0) { out += '"'; i += 6; continue; }
      if (rest.rfind("&apos;", 0) == 0) { out += '\''; i += 6; continue; }
    }
    out += text[i++];
  }
  return out;
}

/// Content of the first <tag>...</tag> element, not unescaped.
inline std::optional<std::string_view> find_element(std::string_view text,
                                                    std::string_view tag,
                                                    std::size_t from = 0) {
  std::string open = "<" + std::string(tag) + ">";
  std::string close = "</" + std::string(tag) + ">";
  auto begin = text.find(open, from);
  if (begin == std::string_view::npos) return std::nullopt;
  begin += open.size();
  auto end = text.find(close, begin);
  if (end == std::string_view::npos) return std::nullopt;
  return text.substr(begin, end - begin);
}

struct XmlChild {
  std::string name;
  std::string text;  // raw content, not unescaped
};

/// Scans flat `<name>text</name>` children in document order. Returns
/// nullopt on malformed tags (unterminated element, missing close tag).
inline std::optional<std::vector<XmlChild>> scan_children(
    std::string_view body) {
  std::vector<XmlChild> children;
  std::size_t pos = 0;
  while (true) {
    auto open = body.find('<', pos);
    if (open == std::string_view::npos) break;
    auto open_end = body.find('>', open);
    if (open_end == std::string_view::npos) return std::nullopt;
    std::string name(body.substr(open + 1, open_end - open - 1));
    if (name.empty() || name[0] == '/') return std::nullopt;
    std::string close = "</" + name + ">";
    auto close_pos = body.find(close, open_end + 1);
    if (close_pos == std::string_view::npos) return std::nullopt;
    children.push_back(
        {name, std::string(body.substr(open_end + 1, close_pos - open_end - 1))});
    pos = close_pos + close.size();
  }
  return children;
}

}  // namespace faaf::detail
