// Copyright 2026 The Edgeplane Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgeplane/addressing.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cstring>
#include <vector>

namespace edgeplane {

namespace {

using u128 = unsigned __int128;

u128 to_u128(const Ipv6Prefix& p) {
  return (static_cast<u128>(p.hi) << 64) | p.lo;
}

u128 mask_for(int length) {
  if (length <= 0) return 0;
  if (length >= 128) return ~static_cast<u128>(0);
  return ~static_cast<u128>(0) << (128 - length);
}

Ipv6Prefix from_u128(u128 bits, int length) {
  Ipv6Prefix p;
  p.hi = static_cast<std::uint64_t>(bits >> 64);
  p.lo = static_cast<std::uint64_t>(bits);
  p.length = length;
  return p;
}

}  // namespace

Ipv6Prefix Ipv6Prefix::parse(std::string_view text) {
  std::string addr_part;
  int length = 128;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    addr_part = std::string(text.substr(0, slash));
    std::string_view len_part = text.substr(slash + 1);
    if (len_part.empty() || len_part.size() > 3)
      throw SimError(Errc::syntax_error, "bad prefix length in '" + std::string(text) + "'");
    length = 0;
    for (char c : len_part) {
      if (c < '0' || c > '9')
        throw SimError(Errc::syntax_error, "bad prefix length in '" + std::string(text) + "'");
      length = length * 10 + (c - '0');
    }
    if (length > 128)
      throw SimError(Errc::syntax_error, "prefix length > 128 in '" + std::string(text) + "'");
  } else {
    addr_part = std::string(text);
  }
  in6_addr raw{};
  if (inet_pton(AF_INET6, addr_part.c_str(), &raw) != 1)
    throw SimError(Errc::syntax_error, "bad IPv6 address '" + addr_part + "'");
  u128 bits = 0;
  for (int i = 0; i < 16; ++i) bits = (bits << 8) | raw.s6_addr[i];
  if ((bits & ~mask_for(length)) != 0)
    throw SimError(Errc::syntax_error,
                   "host bits set past /" + std::to_string(length) + " in '" +
                       std::string(text) + "'");
  return from_u128(bits, length);
}

std::string Ipv6Prefix::to_string() const {
  in6_addr raw{};
  u128 bits = to_u128(*this);
  for (int i = 15; i >= 0; --i) {
    raw.s6_addr[i] = static_cast<std::uint8_t>(bits & 0xff);
    bits >>= 8;
  }
  char buf[INET6_ADDRSTRLEN];
  inet_ntop(AF_INET6, &raw, buf, sizeof(buf));
  return std::string(buf) + "/" + std::to_string(length);
}

bool Ipv6Prefix::contains(const Ipv6Prefix& other) const {
  if (other.length < length) return false;
  return (to_u128(other) & mask_for(length)) == to_u128(*this);
}

Ipv6Prefix Ipv6Prefix::child(int child_length, std::uint64_t index) const {
  int span = child_length - length;
  if (span < 0 || child_length > 128)
    throw SimError(Errc::syntax_error, "child length must extend the parent prefix");
  if (span < 64 && index >= (std::uint64_t{1} << span))
    throw SimError(Errc::pool_exhausted, "child index out of range for /" +
                                             std::to_string(child_length));
  u128 bits = to_u128(*this) | (static_cast<u128>(index) << (128 - child_length));
  return from_u128(bits, child_length);
}

std::uint64_t Ipv6Prefix::child_capacity(int child_length) const {
  int span = child_length - length;
  if (span < 0) return 0;
  if (span >= 64) return ~std::uint64_t{0};
  return std::uint64_t{1} << span;
}

AllocationLedger::AllocationLedger() : AllocationLedger(Ipv6Prefix::parse("2001:db8::/48")) {}

AllocationLedger::AllocationLedger(Ipv6Prefix root) : root_(root) {
  if (root_.length > 56)
    throw SimError(Errc::syntax_error, "root pool must be /56 or shorter");
  site_counter_.capacity = root_.child_capacity(56);
}

std::uint64_t AllocationLedger::take_slot(Counter& c, Errc exhausted, const std::string& what) {
  if (c.next < c.capacity) return c.next++;
  // Counter spent: fall back to the lowest released slot.
  if (!c.released.empty()) {
    auto it = c.released.begin();
    std::uint64_t slot = *it;
    c.released.erase(it);
    return slot;
  }
  throw SimError(exhausted, what + " exhausted");
}

Ipv6Prefix AllocationLedger::allocate_site(const std::string& site_id) {
  if (site_allocations_.contains(site_id))
    throw SimError(Errc::duplicate_site, "site '" + site_id + "' already allocated");
  std::uint64_t slot = take_slot(site_counter_, Errc::pool_exhausted, "root pool");
  Ipv6Prefix p = root_.child(56, slot);
  site_allocations_.emplace(site_id, p);
  host_counters_[site_id].capacity = p.child_capacity(64);
  index_[site_id] = Entry{0, "", slot};
  return p;
}

Ipv6Prefix AllocationLedger::allocate_host_prefix(const std::string& site_id,
                                                  const std::string& host_id) {
  auto site = site_allocations_.find(site_id);
  if (site == site_allocations_.end())
    throw SimError(Errc::unknown_site, "site '" + site_id + "' not allocated");
  if (host_allocations_.contains(host_id))
    throw SimError(Errc::duplicate_host, "host '" + host_id + "' already allocated");
  std::uint64_t slot =
      take_slot(host_counters_[site_id], Errc::site_exhausted, "site '" + site_id + "'");
  Ipv6Prefix p = site->second.child(64, slot);
  host_allocations_.emplace(host_id, p);
  auto& units = unit_counters_[host_id];
  units.capacity = p.child_capacity(128);
  units.next = 1;  // ::0 is the host's own address
  index_[host_id] = Entry{1, site_id, slot};
  return p;
}

Ipv6Prefix AllocationLedger::allocate_unit_address(const std::string& host_id,
                                                   const std::string& unit_instance_id) {
  auto host = host_allocations_.find(host_id);
  if (host == host_allocations_.end())
    throw SimError(Errc::unknown_host, "host '" + host_id + "' not allocated");
  if (unit_allocations_.contains(unit_instance_id))
    throw SimError(Errc::duplicate_unit,
                   "unit '" + unit_instance_id + "' already allocated");
  std::uint64_t slot = take_slot(unit_counters_[host_id], Errc::address_exhausted,
                                 "host '" + host_id + "' /64");
  Ipv6Prefix p = host->second.child(128, slot);
  unit_allocations_.emplace(unit_instance_id, p);
  index_[unit_instance_id] = Entry{2, host_id, slot};
  return p;
}

void AllocationLedger::release(const std::string& id) {
  auto it = index_.find(id);
  if (it == index_.end())
    throw SimError(Errc::unknown_id, "no allocation named '" + id + "'");
  const Entry e = it->second;
  // Children may not outlive their parent: releasing a site or host releases
  // everything allocated under it.
  if (e.level < 2) {
    std::vector<std::string> children;
    for (const auto& [child_id, entry] : index_)
      if (entry.level == e.level + 1 && entry.parent == id) children.push_back(child_id);
    for (const auto& child : children) release(child);
  }
  switch (e.level) {
    case 0: {
      site_allocations_.erase(id);
      host_counters_.erase(id);
      site_counter_.released.insert(e.slot);
      break;
    }
    case 1: {
      host_allocations_.erase(id);
      unit_counters_.erase(id);
      auto parent = host_counters_.find(e.parent);
      if (parent != host_counters_.end()) parent->second.released.insert(e.slot);
      break;
    }
    default: {
      unit_allocations_.erase(id);
      auto parent = unit_counters_.find(e.parent);
      if (parent != unit_counters_.end()) parent->second.released.insert(e.slot);
      break;
    }
  }
  index_.erase(id);
}

std::optional<Ipv6Prefix> AllocationLedger::site_prefix(const std::string& site_id) const {
  auto it = site_allocations_.find(site_id);
  if (it == site_allocations_.end()) return std::nullopt;
  return it->second;
}

std::optional<Ipv6Prefix> AllocationLedger::host_prefix(const std::string& host_id) const {
  auto it = host_allocations_.find(host_id);
  if (it == host_allocations_.end()) return std::nullopt;
  return it->second;
}

std::optional<Ipv6Prefix> AllocationLedger::unit_address(
    const std::string& unit_instance_id) const {
  auto it = unit_allocations_.find(unit_instance_id);
  if (it == unit_allocations_.end()) return std::nullopt;
  return it->second;
}

std::string AllocationLedger::serialize() const {
  struct Line {
    Ipv6Prefix prefix;
    std::string text;
  };
  std::vector<Line> lines;
  auto emit = [&lines](const char* level, const std::map<std::string, Ipv6Prefix>& m) {
    for (const auto& [id, p] : m)
      lines.push_back({p, std::string(level) + " " + id + " " + p.to_string()});
  };
  emit("site", site_allocations_);
  emit("host", host_allocations_);
  emit("unit", unit_allocations_);
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.prefix < b.prefix; });
  std::string out;
  for (const auto& l : lines) {
    out += l.text;
    out += '\n';
  }
  return out;
}

}  // namespace edgeplane
