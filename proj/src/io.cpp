#include "dtc/io.hpp"

#include <sstream>

namespace dtc {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

std::uint32_t parse_u32(const Line& line, const std::string& tok, const char* what) {
  if (tok.empty() || tok.size() > 9) throw ParseError(line.number, std::string("bad ") + what);
  for (char c : tok)
    if (c < '0' || c > '9') throw ParseError(line.number, std::string("bad ") + what);
  return static_cast<std::uint32_t>(std::stoul(tok));
}

Cost parse_cost_tok(const Line& line, const std::string& tok) {
  try {
    return Cost::parse(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, e.what());
  }
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance");

  std::optional<std::uint32_t> nodes;
  std::optional<NodeId> root;
  std::vector<Arc> arcs;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "nodes") {
      if (nodes) throw ParseError(line.number, "duplicate nodes line");
      if (t.size() != 2) throw ParseError(line.number, "expected: nodes <n>");
      nodes = parse_u32(line, t[1], "node count");
      if (*nodes == 0) throw ParseError(line.number, "node count must be positive");
    } else if (t[0] == "arc") {
      if (!nodes) throw ParseError(line.number, "arc before nodes line");
      if (t.size() != 4) throw ParseError(line.number, "expected: arc <tail> <head> <cost>");
      Arc a;
      a.tail = parse_u32(line, t[1], "tail");
      a.head = parse_u32(line, t[2], "head");
      a.cost = parse_cost_tok(line, t[3]);
      if (a.tail >= *nodes || a.head >= *nodes)
        throw ParseError(line.number, "arc endpoint out of range");
      if (a.tail == a.head) throw ParseError(line.number, "self-loops are not allowed");
      arcs.push_back(std::move(a));
    } else if (t[0] == "root") {
      if (!nodes) throw ParseError(line.number, "root before nodes line");
      if (root) throw ParseError(line.number, "duplicate root line");
      if (t.size() != 2) throw ParseError(line.number, "expected: root <r>");
      root = parse_u32(line, t[1], "root");
      if (*root >= *nodes) throw ParseError(line.number, "root out of range");
    } else {
      throw ParseError(line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  if (!nodes) throw ParseError(lines.front().number, "missing nodes line");
  return ParsedInstance{Digraph(*nodes, std::move(arcs)), root};
}

std::string emit_instance(const Digraph& g, std::optional<NodeId> root) {
  std::ostringstream out;
  out << "nodes " << g.node_count() << "\n";
  for (const Arc& a : g.arcs())
    out << "arc " << a.tail << " " << a.head << " " << a.cost.str() << "\n";
  if (root) out << "root " << *root << "\n";
  return out.str();
}

SCPInstance parse_scp(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance");

  SCPInstance scp;
  bool have_elements = false;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "elements") {
      if (have_elements) throw ParseError(line.number, "duplicate elements line");
      if (t.size() != 2) throw ParseError(line.number, "expected: elements <p>");
      scp.element_count = parse_u32(line, t[1], "element count");
      if (scp.element_count == 0) throw ParseError(line.number, "element count must be positive");
      have_elements = true;
    } else if (t[0] == "set") {
      if (!have_elements) throw ParseError(line.number, "set before elements line");
      if (t.size() < 2) throw ParseError(line.number, "expected: set <weight> <element>...");
      SCPInstance::Subset sub;
      sub.weight = parse_cost_tok(line, t[1]);
      for (std::size_t i = 2; i < t.size(); ++i) {
        std::uint32_t e = parse_u32(line, t[i], "element");
        if (e >= scp.element_count) throw ParseError(line.number, "element out of range");
        sub.members.insert(e);
      }
      scp.subsets.push_back(std::move(sub));
    } else {
      throw ParseError(line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  if (!have_elements) throw ParseError(lines.front().number, "missing elements line");
  return scp;
}

std::string emit_scp(const SCPInstance& scp) {
  std::ostringstream out;
  out << "elements " << scp.element_count << "\n";
  for (const auto& sub : scp.subsets) {
    out << "set " << sub.weight.str();
    for (NodeId e : sub.members) out << " " << e;
    out << "\n";
  }
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty certificate");

  Certificate cert;
  bool have_root = false;
  DualFamily pending_family = DualFamily::kCut;
  bool have_family = false;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "dual" && !have_family)
      throw ParseError(line.number, "dual line without preceding family line");
    if (t[0] != "dual" && have_family)
      throw ParseError(line.number, "family line must be followed by a dual line");
    if (t[0] == "root") {
      if (have_root) throw ParseError(line.number, "duplicate root line");
      if (t.size() != 2) throw ParseError(line.number, "expected: root <r>");
      cert.root = parse_u32(line, t[1], "root");
      have_root = true;
    } else if (t[0] == "tree_arc") {
      if (t.size() != 3) throw ParseError(line.number, "expected: tree_arc <tail> <head>");
      cert.tree_arcs.emplace_back(parse_u32(line, t[1], "tail"), parse_u32(line, t[2], "head"));
    } else if (t[0] == "family") {
      if (t.size() != 2 || (t[1] != "B" && t[1] != "T"))
        throw ParseError(line.number, "expected: family <B|T>");
      pending_family = t[1] == "B" ? DualFamily::kCut : DualFamily::kGreedy;
      have_family = true;
    } else if (t[0] == "dual") {
      if (t.size() < 3) throw ParseError(line.number, "expected: dual <value> <node>...");
      DualEntry entry;
      entry.family = pending_family;
      entry.value = parse_cost_tok(line, t[1]);
      for (std::size_t i = 2; i < t.size(); ++i) entry.set.insert(parse_u32(line, t[i], "node"));
      cert.duals.push_back(std::move(entry));
      have_family = false;
    } else {
      throw ParseError(line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  if (have_family) throw ParseError(lines.back().number, "family line without dual line");
  if (!have_root) throw ParseError(lines.back().number, "missing root line");
  return cert;
}

std::string emit_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "root " << cert.root << "\n";
  for (const auto& [tail, head] : cert.tree_arcs) out << "tree_arc " << tail << " " << head << "\n";
  for (const auto& entry : cert.duals) {
    out << "family " << family_letter(entry.family) << "\n";
    out << "dual " << entry.value.str();
    for (NodeId v : entry.set) out << " " << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace dtc
