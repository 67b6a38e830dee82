// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qsm/common.hpp"

namespace qsm {

struct Subsystem {
  std::string label;
  Index dim = 0;
};

// Ordered list of named subsystems. The first subsystem is the most
// significant tensor factor: a basis index i decomposes as
//   i = ((d_1 digits) ... ) with digit k running over subsystem k,
// i.e. |i> = |i_0>|i_1>...|i_{m-1}> with i = i_0*d_1*...*d_{m-1} + ...
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::initializer_list<Subsystem> parts);
  explicit SubsystemLayout(std::vector<Subsystem> parts);

  std::size_t size() const { return parts_.size(); }
  const Subsystem& operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<Subsystem>& parts() const { return parts_; }

  Index total_dim() const;
  bool has(const std::string& label) const;
  // Position of `label` in the ordered list; throws invalid_input if absent.
  std::size_t position(const std::string& label) const;
  Index dim_of(const std::string& label) const;
  // Product of dims of several labels (each must exist).
  Index dim_of(const std::vector<std::string>& labels) const;

  std::vector<std::string> labels() const;
  // Labels not in `drop`, in layout order.
  std::vector<std::string> labels_except(const std::vector<std::string>& drop) const;

  // Sub-layout consisting of `which` in the order given.
  SubsystemLayout select(const std::vector<std::string>& which) const;
  // This layout with `drop` removed, order preserved.
  SubsystemLayout erase(const std::vector<std::string>& drop) const;
  // Concatenation; throws on label collision.
  SubsystemLayout concat(const SubsystemLayout& other) const;
  // Copy with one subsystem renamed; new label must not collide.
  SubsystemLayout renamed(const std::string& from, const std::string& to) const;

  // stride[k] = product of dims after position k (so index = sum digit_k*stride_k).
  std::vector<Index> strides() const;
  // Decompose a flat index into per-subsystem digits.
  void unravel(Index flat, std::vector<Index>& digits) const;
  Index ravel(const std::vector<Index>& digits) const;

  bool operator==(const SubsystemLayout& other) const;
  std::string to_string() const;  // e.g. "A:4,B:2,R:2"

 private:
  void validate() const;
  std::vector<Subsystem> parts_;
};

}  // namespace qsm
