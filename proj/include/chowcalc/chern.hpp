#pragma once

#include <array>
#include <vector>

#include "chowcalc/chow.hpp"

namespace chowcalc {

inline constexpr unsigned kMaxChern = 4;

// Rank and Chern classes c1..c4 of a bundle on the ambient model; higher classes are dropped.
class FormalBundle {
 public:
  FormalBundle(ModelPtr ambient, PolyExpr rank, std::vector<ChowClass> chern);
  // Line bundle with first Chern class L.
  static FormalBundle line(ModelPtr ambient, const ChowClass& l);
  // Direct sum of `count` copies of the line bundle L; count may be symbolic.
  static FormalBundle split_sum(ModelPtr ambient, const ChowClass& l, const PolyExpr& count);

  const ModelPtr& ambient() const { return ambient_; }
  const PolyExpr& rank() const { return rank_; }
  // c(0) is the unit class; c(k) vanishes for k > kMaxChern.
  ChowClass c(unsigned k) const;
  FormalBundle transformed(ModelPtr ambient, const std::function<PolyExpr(const PolyExpr&)>& f) const;
  friend bool operator==(const FormalBundle& a, const FormalBundle& b) {
    return *a.ambient_ == *b.ambient_ && a.rank_ == b.rank_ && a.chern_ == b.chern_;
  }

 private:
  ModelPtr ambient_;
  PolyExpr rank_;
  std::array<ChowClass, kMaxChern> chern_;
};

FormalBundle whitney(const FormalBundle& a, const FormalBundle& b);
FormalBundle dual(const FormalBundle& b);
// b tensor a line bundle with first Chern class L.
FormalBundle twist_line(const FormalBundle& b, const ChowClass& l);

ChowClass schur_s22(const FormalBundle& b);
ChowClass porteous_codim2(const FormalBundle& b);

// The two degree-6 contributions to the codimension-three degeneracy class, kept apart.
struct DegeneracyPair {
  ChowClass c3_squared;
  ChowClass c2_c4;
  ChowClass difference() const { return c3_squared - c2_c4; }
};
DegeneracyPair porteous_codim3(const FormalBundle& b);

// Largest k <= n with detE^k . H^{n-k} nonzero once the assignment is applied; 0 if none.
unsigned numerical_dimension(const ChowClass& det, const ChowModel& model, const Assignment& at);

}  // namespace chowcalc
