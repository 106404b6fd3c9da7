#include "qlab/vmat.hpp"

namespace qlab {

VMatrix::VMatrix(QuantalePtr base, int src, int dst, std::vector<Elem> entries)
    : base_(std::move(base)), src_(src), dst_(dst), entries_(std::move(entries)) {
  if (!base_) throw input_error("vmatrix: null base");
  require_commutative_base(*base_, "vmatrix");
  if (src_ < 0 || dst_ < 0) throw input_error("vmatrix: negative carrier size");
  if (entries_.size() != std::size_t(src_) * dst_)
    throw input_error("vmatrix: entry table has wrong shape");
  for (Elem e : entries_)
    if (e < 0 || e >= base_->size()) throw input_error("vmatrix: entry out of base carrier");
}

VMatrix::VMatrix(QuantalePtr base, int src, int dst, Elem fill)
    : VMatrix(std::move(base), src, dst,
              std::vector<Elem>(std::size_t(src) * dst, fill)) {}

VMatrix VMatrix::identity(QuantalePtr base, int n) {
  VMatrix r(base, n, n, base->bottom());
  for (int x = 0; x < n; ++x) r.entries_[std::size_t(x) * n + x] = base->unit();
  return r;
}

VMatrix VMatrix::graph_of(QuantalePtr base, int src, int dst, std::span<const int> f) {
  if (int(f.size()) != src) throw input_error("graph_of: function table has wrong length");
  VMatrix r(base, src, dst, base->bottom());
  for (int x = 0; x < src; ++x) {
    if (f[std::size_t(x)] < 0 || f[std::size_t(x)] >= dst)
      throw input_error("graph_of: function value out of target");
    r.entries_[std::size_t(x) * dst + f[std::size_t(x)]] = base->unit();
  }
  return r;
}

VMatrix VMatrix::bottom(QuantalePtr base, int src, int dst) {
  Elem bot = base->bottom();
  return VMatrix(std::move(base), src, dst, bot);
}

VMatrix VMatrix::involute() const {
  VMatrix r(base_, dst_, src_, base_->bottom());
  for (int x = 0; x < src_; ++x)
    for (int y = 0; y < dst_; ++y) r.entries_[std::size_t(y) * src_ + x] = at(x, y);
  return r;
}

VMatrix VMatrix::join_with(const VMatrix& other) const {
  require_same_base(*this, other, "join");
  if (src_ != other.src_ || dst_ != other.dst_)
    throw input_error("join: shape mismatch");
  VMatrix r(base_, src_, dst_, base_->bottom());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    r.entries_[i] = base_->join(entries_[i], other.entries_[i]);
  return r;
}

bool VMatrix::leq(const VMatrix& other) const {
  require_same_base(*this, other, "leq");
  if (src_ != other.src_ || dst_ != other.dst_) throw input_error("leq: shape mismatch");
  bool pointwise = true;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    pointwise = pointwise && base_->leq(entries_[i], other.entries_[i]);
  // Equivalent residuation form: k <= meet over cells of hom(r, r').
  Elem acc = base_->top();
  for (std::size_t i = 0; i < entries_.size(); ++i)
    acc = base_->meet(acc, base_->hom(entries_[i], other.entries_[i]));
  bool residual = base_->leq(base_->unit(), acc);
  if (pointwise != residual)
    throw internal_error("leq: pointwise and residuation forms disagree");
  return pointwise;
}

VMatrix compose(const VMatrix& r, const VMatrix& s) {
  require_same_base(r, s, "compose");
  if (r.dst() != s.src()) throw input_error("compose: middle carriers differ");
  const Quantale& v = *r.base();
  VMatrix out(r.base(), r.src(), s.dst(), v.bottom());
  std::vector<Elem> cells(std::size_t(r.src()) * s.dst(), v.bottom());
  for (int x = 0; x < r.src(); ++x)
    for (int z = 0; z < s.dst(); ++z) {
      Elem acc = v.bottom();
      for (int y = 0; y < r.dst(); ++y)
        acc = v.join(acc, v.tensor(r.at(x, y), s.at(y, z)));
      cells[std::size_t(x) * s.dst() + z] = acc;
    }
  return VMatrix(r.base(), r.src(), s.dst(), std::move(cells));
}

void require_same_base(const VMatrix& a, const VMatrix& b, const char* where) {
  if (a.base() == b.base()) return;
  if (*a.base() == *b.base()) return;
  throw input_error(std::string(where) + ": bases differ");
}

}  // namespace qlab
