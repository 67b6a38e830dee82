// SPDX-License-Identifier: Apache-2.0
#include "qsm/layout.hpp"

#include <algorithm>
#include <set>

namespace qsm {

SubsystemLayout::SubsystemLayout(std::initializer_list<Subsystem> parts)
    : parts_(parts) {
  validate();
}

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> parts)
    : parts_(std::move(parts)) {
  validate();
}

void SubsystemLayout::validate() const {
  std::set<std::string> seen;
  for (const auto& p : parts_) {
    if (p.label.empty()) throw invalid_input("subsystem label must be nonempty");
    if (p.dim < 1) throw invalid_input("subsystem '" + p.label + "' has dim < 1");
    if (!seen.insert(p.label).second)
      throw invalid_input("duplicate subsystem label '" + p.label + "'");
  }
}

Index SubsystemLayout::total_dim() const {
  Index d = 1;
  for (const auto& p : parts_) d *= p.dim;
  return d;
}

bool SubsystemLayout::has(const std::string& label) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Subsystem& p) { return p.label == label; });
}

std::size_t SubsystemLayout::position(const std::string& label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].label == label) return i;
  throw invalid_input("no subsystem labeled '" + label + "' in " + to_string());
}

Index SubsystemLayout::dim_of(const std::string& label) const {
  return parts_[position(label)].dim;
}

Index SubsystemLayout::dim_of(const std::vector<std::string>& labels) const {
  Index d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.label);
  return out;
}

std::vector<std::string> SubsystemLayout::labels_except(
    const std::vector<std::string>& drop) const {
  std::vector<std::string> out;
  for (const auto& p : parts_) {
    if (std::find(drop.begin(), drop.end(), p.label) == drop.end())
      out.push_back(p.label);
  }
  return out;
}

SubsystemLayout SubsystemLayout::select(const std::vector<std::string>& which) const {
  std::vector<Subsystem> parts;
  parts.reserve(which.size());
  for (const auto& l : which) parts.push_back(parts_[position(l)]);
  return SubsystemLayout(std::move(parts));
}

SubsystemLayout SubsystemLayout::erase(const std::vector<std::string>& drop) const {
  for (const auto& l : drop) (void)position(l);  // all must exist
  return select(labels_except(drop));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Subsystem> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return SubsystemLayout(std::move(parts));  // validate() rejects collisions
}

SubsystemLayout SubsystemLayout::renamed(const std::string& from,
                                         const std::string& to) const {
  std::vector<Subsystem> parts = parts_;
  parts[position(from)].label = to;
  return SubsystemLayout(std::move(parts));
}

std::vector<Index> SubsystemLayout::strides() const {
  std::vector<Index> s(parts_.size(), 1);
  for (std::size_t i = parts_.size(); i-- > 1;)
    s[i - 1] = s[i] * parts_[i].dim;
  return s;
}

void SubsystemLayout::unravel(Index flat, std::vector<Index>& digits) const {
  digits.resize(parts_.size());
  for (std::size_t i = parts_.size(); i-- > 0;) {
    digits[i] = flat % parts_[i].dim;
    flat /= parts_[i].dim;
  }
}

Index SubsystemLayout::ravel(const std::vector<Index>& digits) const {
  Index flat = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    flat = flat * parts_[i].dim + digits[i];
  return flat;
}

bool SubsystemLayout::operator==(const SubsystemLayout& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].label != other.parts_[i].label || parts_[i].dim != other.parts_[i].dim)
      return false;
  return true;
}

std::string SubsystemLayout::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += parts_[i].label + ':' + std::to_string(parts_[i].dim);
  }
  return s;
}

}  // namespace qsm
