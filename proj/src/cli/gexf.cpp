#include <ostream>

#include "coord/cli.hpp"
#include "coord/format.hpp"

namespace coord::cli {
namespace {

std::string xml_escape(std::string_view text) {
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

}  // namespace

void write_gexf(std::ostream& out, const std::vector<GexfNode>& nodes, const SimilarityGraph& graph) {
  bool any_community = false, any_coordination = false, any_polarity = false;
  for (const auto& n : nodes) {
    any_community |= n.community_id.has_value();
    any_coordination |= n.coordination.has_value();
    any_polarity |= n.polarity.has_value();
  }

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
         "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
  if (any_community || any_coordination || any_polarity) {
    out << "    <attributes class=\"node\">\n";
    if (any_community) out << "      <attribute id=\"community_id\" title=\"community_id\" type=\"integer\"/>\n";
    if (any_coordination)
      out << "      <attribute id=\"node_coordination\" title=\"node_coordination\" type=\"double\"/>\n";
    if (any_polarity) out << "      <attribute id=\"polarity\" title=\"polarity\" type=\"double\"/>\n";
    out << "    </attributes>\n";
  }
  out << "    <nodes>\n";
  for (const auto& n : nodes) {
    const auto id = xml_escape(n.id);
    out << "      <node id=\"" << id << "\" label=\"" << id << '"';
    if (!n.community_id && !n.coordination && !n.polarity) {
      out << "/>\n";
      continue;
    }
    out << ">\n        <attvalues>\n";
    if (n.community_id) out << "          <attvalue for=\"community_id\" value=\"" << *n.community_id << "\"/>\n";
    if (n.coordination)
      out << "          <attvalue for=\"node_coordination\" value=\"" << format_general(*n.coordination, 9)
          << "\"/>\n";
    if (n.polarity)
      out << "          <attvalue for=\"polarity\" value=\"" << format_general(*n.polarity, 9) << "\"/>\n";
    out << "        </attvalues>\n      </node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  std::size_t k = 0;
  for (const auto& e : graph.edges())
    out << "      <edge id=\"" << k++ << "\" source=\"" << xml_escape(graph.node(e.u)) << "\" target=\""
        << xml_escape(graph.node(e.v)) << "\" weight=\"" << format_general(e.weight, 9) << "\"/>\n";
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

}  // namespace coord::cli
