#include "verbal/descriptor.hpp"

#include <vector>

#include "verbal/errors.hpp"

namespace verbal {

namespace {

/// Splits "head(a,b,c)" into its comma-separated arguments, respecting
/// nested parentheses.
std::vector<std::string> call_args(const std::string& text, const std::string& head) {
  if (text.rfind(head + "(", 0) != 0 || text.back() != ')')
    throw ParseError("expected " + head + "(...): " + text);
  const std::string inner = text.substr(head.size() + 1,
                                        text.size() - head.size() - 2);
  std::vector<std::string> args;
  std::string cur;
  int depth = 0;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !args.empty()) args.push_back(cur);
  return args;
}

}  // namespace

std::string ProductDescriptor::to_string() const {
  std::string s = "product(" + a + "," + b + "," + wordset;
  if (engine != "auto") s += ",engine=" + engine;
  return s + ")";
}

ProductDescriptor parse_product_descriptor(const std::string& text) {
  const auto args = call_args(text, "product");
  if (args.size() != 3 && args.size() != 4)
    throw ParseError("product takes 3 or 4 arguments: " + text);
  ProductDescriptor d;
  d.a = args[0];
  d.b = args[1];
  d.wordset = args[2];
  if (args.size() == 4) {
    if (args[3].rfind("engine=", 0) != 0)
      throw ParseError("fourth product argument must be engine=...: " + text);
    d.engine = args[3].substr(7);
  }
  // validate eagerly so malformed descriptors fail at parse time
  WordSet::parse(d.wordset);
  return d;
}

std::string WreathDescriptor::to_string() const {
  return "wreath(" + g + "," + h + "," + wordset + ")";
}

WreathDescriptor parse_wreath_descriptor(const std::string& text) {
  const auto args = call_args(text, "wreath");
  if (args.size() != 3) throw ParseError("wreath takes 3 arguments: " + text);
  WreathDescriptor d{args[0], args[1], args[2]};
  WordSet::parse(d.wordset);
  return d;
}

std::string MetricDescriptor::to_string() const {
  switch (kind) {
    case Kind::sym_hamming:
      return "sym:" + std::to_string(n);
    case Kind::gl_rank:
      return "gl:" + std::to_string(n) + ":" + std::to_string(p);
    case Kind::unitary_hs:
      return "unitary:" + std::to_string(n);
    case Kind::wreath_metric:
      return "wreathmetric(" + inner + "," + std::to_string(b) + ")";
  }
  return "?";
}

MetricDescriptor parse_metric_descriptor(const std::string& text) {
  MetricDescriptor d;
  if (text.rfind("wreathmetric(", 0) == 0) {
    const auto args = call_args(text, "wreathmetric");
    if (args.size() != 2) throw ParseError("wreathmetric takes 2 arguments");
    d.kind = MetricDescriptor::Kind::wreath_metric;
    d.inner = args[0];
    d.b = std::stoul(args[1]);
    parse_metric_descriptor(d.inner);  // must itself be valid
    return d;
  }
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) throw ParseError("bad metric descriptor: " + text);
  const std::string head = text.substr(0, c1);
  try {
    if (head == "sym") {
      d.kind = MetricDescriptor::Kind::sym_hamming;
      d.n = std::stoul(text.substr(c1 + 1));
    } else if (head == "unitary") {
      d.kind = MetricDescriptor::Kind::unitary_hs;
      d.n = std::stoul(text.substr(c1 + 1));
    } else if (head == "gl") {
      const auto c2 = text.find(':', c1 + 1);
      if (c2 == std::string::npos) throw ParseError("gl needs gl:N:P: " + text);
      d.kind = MetricDescriptor::Kind::gl_rank;
      d.n = std::stoul(text.substr(c1 + 1, c2 - c1 - 1));
      d.p = std::stoll(text.substr(c2 + 1));
    } else {
      throw ParseError("unknown metric descriptor: " + text);
    }
  } catch (const std::invalid_argument&) {
    throw ParseError("bad metric descriptor: " + text);
  }
  return d;
}

}  // namespace verbal
