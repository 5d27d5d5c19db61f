#include "rumorsim/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rumorsim/error.hpp"

namespace rumorsim {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view next_token(std::string_view& s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  std::size_t len = 0;
  while (len < s.size() && !is_space(s[len])) ++len;
  auto tok = s.substr(0, len);
  s.remove_prefix(len);
  return tok;
}

bool parse_int(std::string_view tok, std::int64_t& out) {
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

std::string xml_unescape(std::string_view s) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto& [entity, ch] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out += ch;
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

struct XmlTag {
  std::string name;
  bool closing = false;
  bool self_closing = false;
  std::unordered_map<std::string, std::string> attrs;
};

/// Minimal tag scanner for the GraphML subset this module writes.
class XmlScanner {
 public:
  explicit XmlScanner(std::string_view doc) : doc_(doc) {}

  /// Advances to the next element tag, skipping declarations and comments.
  /// `text` receives the character data preceding the tag.
  bool next(XmlTag& tag, std::string& text) {
    while (true) {
      const auto open = doc_.find('<', pos_);
      if (open == std::string_view::npos) return false;
      text = xml_unescape(doc_.substr(pos_, open - pos_));
      if (doc_.substr(open, 4) == "<!--") {
        const auto end = doc_.find("-->", open);
        if (end == std::string_view::npos) throw ParseError("unterminated XML comment");
        pos_ = end + 3;
        continue;
      }
      const auto close = doc_.find('>', open);
      if (close == std::string_view::npos) throw ParseError("unterminated XML tag");
      pos_ = close + 1;
      std::string_view body = doc_.substr(open + 1, close - open - 1);
      if (!body.empty() && (body.front() == '?' || body.front() == '!')) continue;
      tag = XmlTag{};
      if (!body.empty() && body.front() == '/') {
        tag.closing = true;
        body.remove_prefix(1);
      }
      if (!body.empty() && body.back() == '/') {
        tag.self_closing = true;
        body.remove_suffix(1);
      }
      std::size_t i = 0;
      while (i < body.size() && !is_space(body[i])) ++i;
      tag.name = std::string(body.substr(0, i));
      parse_attributes(body.substr(i), tag);
      return true;
    }
  }

 private:
  static void parse_attributes(std::string_view s, XmlTag& tag) {
    while (true) {
      s = trim(s);
      if (s.empty()) return;
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) throw ParseError("malformed XML attribute in <" + tag.name + ">");
      std::string key(trim(s.substr(0, eq)));
      s.remove_prefix(eq + 1);
      s = trim(s);
      if (s.empty() || (s.front() != '"' && s.front() != '\'')) {
        throw ParseError("unquoted XML attribute '" + key + "'");
      }
      const char quote = s.front();
      const auto end = s.find(quote, 1);
      if (end == std::string_view::npos) throw ParseError("unterminated XML attribute '" + key + "'");
      tag.attrs[key] = xml_unescape(s.substr(1, end - 1));
      s.remove_prefix(end + 1);
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

Graph build_graph(const std::vector<std::string>& node_ids,
                  const std::vector<std::string>& labels,
                  const std::vector<std::pair<std::string, std::string>>& edge_refs) {
  std::unordered_map<std::string, NodeId> index;
  for (NodeId i = 0; i < node_ids.size(); ++i) {
    if (!index.emplace(node_ids[i], i).second) throw ParseError("duplicate node id '" + node_ids[i] + "'");
  }
  Graph g(node_ids.size());
  for (const auto& [a, b] : edge_refs) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw ParseError("edge references undeclared node '" + (ia == index.end() ? a : b) + "'");
    }
    if (ia->second != ib->second) g.add_edge(ia->second, ib->second);
  }
  if (std::any_of(labels.begin(), labels.end(), [](const auto& l) { return !l.empty(); })) {
    g.set_labels(labels);
  }
  return g;
}

Graph import_graphml(std::string_view doc) {
  XmlScanner scanner(doc);
  XmlTag tag;
  std::string text;
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string label_key;
  bool in_node = false;
  bool in_label = false;
  bool saw_graph = false;
  while (scanner.next(tag, text)) {
    if (tag.name == "key" && !tag.closing) {
      const auto name = tag.attrs.find("attr.name");
      if (name != tag.attrs.end() && name->second == "label") label_key = tag.attrs["id"];
    } else if (tag.name == "graph" && !tag.closing) {
      saw_graph = true;
      const auto dir = tag.attrs.find("edgedefault");
      if (dir != tag.attrs.end() && dir->second != "undirected") {
        throw ParseError("only undirected GraphML graphs are supported");
      }
    } else if (tag.name == "node") {
      if (tag.closing) {
        in_node = false;
        continue;
      }
      const auto id = tag.attrs.find("id");
      if (id == tag.attrs.end()) throw ParseError("GraphML node without id");
      ids.push_back(id->second);
      labels.emplace_back();
      in_node = !tag.self_closing;
    } else if (tag.name == "data") {
      if (tag.closing) {
        if (in_label) labels.back() = text;
        in_label = false;
      } else {
        in_label = in_node && !label_key.empty() && tag.attrs["key"] == label_key && !tag.self_closing;
      }
    } else if (tag.name == "edge" && !tag.closing) {
      const auto s = tag.attrs.find("source");
      const auto t = tag.attrs.find("target");
      if (s == tag.attrs.end() || t == tag.attrs.end()) throw ParseError("GraphML edge without endpoints");
      edges.emplace_back(s->second, t->second);
    }
  }
  if (!saw_graph) throw ParseError("no <graph> element in GraphML document");
  return build_graph(ids, labels, edges);
}

/// Reads a DOT identifier: bare word/number or a double-quoted string.
bool read_dot_id(std::string_view& s, std::string& out) {
  s = trim(s);
  if (s.empty()) return false;
  out.clear();
  if (s.front() == '"') {
    std::size_t i = 1;
    for (; i < s.size() && s[i] != '"'; ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) {
        ++i;
        out += s[i] == 'n' ? '\n' : s[i];
      } else {
        out += s[i];
      }
    }
    if (i >= s.size()) throw ParseError("unterminated DOT string");
    s.remove_prefix(i + 1);
    return true;
  }
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '.')) ++i;
  if (i == 0) return false;
  out = std::string(s.substr(0, i));
  s.remove_prefix(i);
  return true;
}

Graph import_dot(std::string_view doc) {
  const auto open = doc.find('{');
  const auto close = doc.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError("DOT document has no graph body");
  }
  const auto head = trim(doc.substr(0, open));
  if (head.find("digraph") != std::string_view::npos) throw ParseError("only undirected DOT graphs are supported");
  std::string_view body = doc.substr(open + 1, close - open - 1);

  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::pair<std::string, std::string>> edges;
  auto declare = [&](const std::string& id) -> std::size_t {
    auto [it, fresh] = seen.emplace(id, ids.size());
    if (fresh) {
      ids.push_back(id);
      labels.emplace_back();
    }
    return it->second;
  };

  std::size_t line_no = 0;
  std::string line_buf;
  std::istringstream lines{std::string(body)};
  while (std::getline(lines, line_buf)) {
    ++line_no;
    std::string_view s = trim(line_buf);
    if (s.empty() || s.starts_with("//") || s.starts_with('#')) continue;
    if (s.back() == ';') s.remove_suffix(1);
    std::string first;
    if (!read_dot_id(s, first)) throw ParseError("unrecognised DOT statement", line_no);
    if (first == "node" || first == "edge" || first == "graph") continue;  // attribute defaults
    s = trim(s);
    if (s.starts_with("--")) {
      s.remove_prefix(2);
      std::string second;
      if (!read_dot_id(s, second)) throw ParseError("DOT edge without target", line_no);
      declare(first);
      declare(second);
      edges.emplace_back(first, second);
      continue;
    }
    const auto idx = declare(first);
    if (s.starts_with('[')) {
      const auto key = s.find("label");
      if (key != std::string_view::npos) {
        std::string_view rest = s.substr(key + 5);
        rest = trim(rest);
        if (!rest.starts_with('=')) throw ParseError("malformed DOT label", line_no);
        rest.remove_prefix(1);
        std::string label;
        if (!read_dot_id(rest, label)) throw ParseError("malformed DOT label", line_no);
        labels[idx] = label;
      }
    }
  }
  return build_graph(ids, labels, edges);
}

}  // namespace

EdgeListLoad load_edge_list(std::istream& in) {
  EdgeListLoad result;
  std::unordered_map<std::int64_t, NodeId> remap;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  auto intern = [&](std::int64_t id) {
    auto [it, fresh] = remap.emplace(id, static_cast<NodeId>(result.original_ids.size()));
    if (fresh) result.original_ids.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    const auto a = next_token(rest);
    const auto b = next_token(rest);
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (b.empty() || !trim(rest).empty() || !parse_int(a, u) || !parse_int(b, v)) {
      throw ParseError("expected two integer node ids, got '" + std::string(trim(line)) + "'", line_no);
    }
    const NodeId iu = intern(u);
    const NodeId iv = intern(v);
    if (iu == iv) {
      ++result.self_loops_dropped;
      continue;
    }
    pairs.emplace_back(iu, iv);
  }
  if (in.bad()) throw IoError("read failure while loading edge list");

  result.graph = Graph(result.original_ids.size());
  for (const auto& [u, v] : pairs) {
    if (!result.graph.add_edge(u, v)) ++result.duplicate_edges;
  }
  return result;
}

EdgeListLoad load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path.string() + "'");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes: " << g.node_count() << " edges: " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

GraphFormat parse_graph_format(std::string_view name) {
  const auto l = lower(name);
  if (l == "graphml") return GraphFormat::GraphML;
  if (l == "dot") return GraphFormat::Dot;
  throw ParameterError("unknown graph format '" + std::string(name) + "' (expected graphml or dot)");
}

void export_graph(std::ostream& out, const Graph& g, GraphFormat format) {
  const auto& labels = g.labels();
  if (format == GraphFormat::GraphML) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
           "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
           "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
           "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
           "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
           "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (NodeId u = 0; u < g.node_count(); ++u) {
      if (labels.empty()) {
        out << "    <node id=\"n" << u << "\"/>\n";
      } else {
        out << "    <node id=\"n" << u << "\"><data key=\"label\">" << xml_escape(labels[u])
            << "</data></node>\n";
      }
    }
    for (const auto& e : g.edges()) {
      out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v << "\"/>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return;
  }
  out << "graph G {\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    out << "  " << u;
    if (!labels.empty()) out << " [label=\"" << dot_escape(labels[u]) << "\"]";
    out << ";\n";
  }
  for (const auto& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
}

std::string export_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  export_graph(out, g, format);
  return out.str();
}

Graph import_graph(std::string_view document, GraphFormat format) {
  return format == GraphFormat::GraphML ? import_graphml(document) : import_dot(document);
}

Graph import_graph(std::istream& in, GraphFormat format) {
  const std::string doc{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return import_graph(doc, format);
}

Graph load_graph_file(const std::filesystem::path& path) {
  const auto ext = lower(path.extension().string());
  if (ext == ".graphml" || ext == ".dot" || ext == ".gv") {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file '" + path.string() + "'");
    return import_graph(in, ext == ".graphml" ? GraphFormat::GraphML : GraphFormat::Dot);
  }
  return load_edge_list(path).graph;
}

}  // namespace rumorsim
