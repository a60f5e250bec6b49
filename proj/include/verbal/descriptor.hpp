#pragma once

#include <string>

#include "verbal/group.hpp"
#include "verbal/words.hpp"

namespace verbal {

/// product(<group>,<group>,<wordset>[,engine=auto|class2|metab|generic|direct])
struct ProductDescriptor {
  std::string a, b, wordset;
  std::string engine = "auto";
  std::string to_string() const;
};
ProductDescriptor parse_product_descriptor(const std::string& text);

/// wreath(<G>,<H>,<wordset>)
struct WreathDescriptor {
  std::string g, h, wordset;
  std::string to_string() const;
};
WreathDescriptor parse_wreath_descriptor(const std::string& text);

/// sym:N | gl:N:P | unitary:N | wreathmetric(<inner>,B)
struct MetricDescriptor {
  enum class Kind { sym_hamming, gl_rank, unitary_hs, wreath_metric };
  Kind kind = Kind::sym_hamming;
  std::size_t n = 0;       // degree / dimension
  long long p = 0;         // gl only
  std::string inner;       // wreath metric only
  std::size_t b = 0;       // wreath metric only
  std::string to_string() const;
};
MetricDescriptor parse_metric_descriptor(const std::string& text);

}  // namespace verbal
