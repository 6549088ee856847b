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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "edgeplane/error.hpp"

namespace edgeplane {

/// An IPv6 prefix: 128-bit value plus prefix length. Bits past `length` are
/// zero (enforced on parse and construction).
struct Ipv6Prefix {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  int length = 0;

  /// Parses "2001:db8::/48" (also bare addresses, implying /128).
  /// Rejects non-canonical inputs with bits set past the prefix length.
  static Ipv6Prefix parse(std::string_view text);

  /// Canonical lowercase compressed form with "/length".
  std::string to_string() const;

  bool contains(const Ipv6Prefix& other) const;

  /// The `index`-th child at `child_length`. The index occupies the bit span
  /// between this prefix's length and `child_length`.
  Ipv6Prefix child(int child_length, std::uint64_t index) const;

  /// Number of children at `child_length`; capped at uint64 max for the
  /// 64-bit span of a /64.
  std::uint64_t child_capacity(int child_length) const;

  auto operator<=>(const Ipv6Prefix&) const = default;
};

/// Hierarchical allocation state over one root pool: /56 per site, /64 per
/// host, /128 per functional unit (::0 of each /64 stays with the host).
///
/// Assignment is sequential with monotonic counters; released slots are
/// reused only once the parent's counter is exhausted, lowest slot first.
class AllocationLedger {
 public:
  AllocationLedger();  // root 2001:db8::/48
  explicit AllocationLedger(Ipv6Prefix root);

  Ipv6Prefix allocate_site(const std::string& site_id);
  Ipv6Prefix allocate_host_prefix(const std::string& site_id, const std::string& host_id);
  Ipv6Prefix allocate_unit_address(const std::string& host_id,
                                   const std::string& unit_instance_id);

  /// Releases a site, host, or unit allocation by its id. Releasing a site
  /// or host releases everything allocated under it.
  void release(const std::string& id);

  std::optional<Ipv6Prefix> site_prefix(const std::string& site_id) const;
  std::optional<Ipv6Prefix> host_prefix(const std::string& host_id) const;
  std::optional<Ipv6Prefix> unit_address(const std::string& unit_instance_id) const;

  const Ipv6Prefix& root() const { return root_; }
  const std::map<std::string, Ipv6Prefix>& sites() const { return site_allocations_; }
  const std::map<std::string, Ipv6Prefix>& hosts() const { return host_allocations_; }
  const std::map<std::string, Ipv6Prefix>& units() const { return unit_allocations_; }

  /// One "<level> <id> <prefix>" line per allocation, sorted by prefix.
  std::string serialize() const;

 private:
  struct Counter {
    std::uint64_t next = 0;
    std::uint64_t capacity = 0;
    std::set<std::uint64_t> released;
  };

  std::uint64_t take_slot(Counter& c, Errc exhausted, const std::string& what);

  Ipv6Prefix root_;
  Counter site_counter_;
  std::map<std::string, Ipv6Prefix> site_allocations_;
  std::map<std::string, Ipv6Prefix> host_allocations_;
  std::map<std::string, Ipv6Prefix> unit_allocations_;
  std::map<std::string, Counter> host_counters_;  // site_id -> /64 slots
  std::map<std::string, Counter> unit_counters_;  // host_id -> /128 slots
  // reverse index for release(): id -> (level, parent id, slot)
  struct Entry {
    int level;  // 0 site, 1 host, 2 unit
    std::string parent;
    std::uint64_t slot;
  };
  std::map<std::string, Entry> index_;
};

}  // namespace edgeplane
