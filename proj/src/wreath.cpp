#include "verbal/wreath.hpp"

namespace verbal {

VerbalWreathGroup::VerbalWreathGroup(const FiniteGroup& g, const FiniteGroup& h,
                                     const WordSet& w)
    : h_(std::make_shared<FiniteGroup>(h)), base_(g, h.size(), w) {}

NfoldElt VerbalWreathGroup::act(Elt h, const NfoldElt& x) const {
  std::vector<std::optional<std::size_t>> index_map(h_->size());
  for (Elt i = 0; i < h_->size(); ++i) index_map[i] = h_->mul(h, i);
  auto moved = base_.push_forward(base_, index_map, x);
  if (!moved) throw CheckFailed("wreath action relabeling failed");
  return *moved;
}

WreathElement VerbalWreathGroup::multiply(const WreathElement& a,
                                          const WreathElement& b) const {
  return {base_.multiply(a.x, act(a.h, b.x)), h_->mul(a.h, b.h)};
}

WreathElement VerbalWreathGroup::inverse(const WreathElement& a) const {
  const Elt hinv = h_->inv(a.h);
  return {act(hinv, base_.inverse(a.x)), hinv};
}

std::vector<Elt> VerbalWreathGroup::support(const NfoldElt& x) const {
  std::vector<Elt> s;
  for (std::size_t i : base_.support(x)) s.push_back(static_cast<Elt>(i));
  return s;
}

std::vector<WreathElement> VerbalWreathGroup::elements(unsigned long long cap) const {
  if (order() > cap) throw BudgetExceeded("wreath group too large to enumerate");
  std::vector<WreathElement> out;
  out.reserve(static_cast<std::size_t>(order()));
  const auto base_elts = base_.elements(cap);  // identity first
  for (Elt h = 0; h < h_->size(); ++h)
    for (const NfoldElt& x : base_elts) out.push_back({x, h});
  return out;
}

}  // namespace verbal
