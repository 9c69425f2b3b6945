#ifndef SSG_QUOTIENT_CACHE_HPP
#define SSG_QUOTIENT_CACHE_HPP

#include <filesystem>
#include <optional>

#include "ssg/quotient.hpp"

namespace ssg {

/// On-disk cache of enumerated quotients keyed by (automaton content hash, n).
///
/// File layout, version 1, all integers little-endian:
///
///   magic        8 bytes  "SSGQUOT1"
///   version      u32      1
///   degree       u32
///   level        u32
///   reserved     u32      0
///   hash         u64      Automaton::content_hash()
///   order        u64      |pi_n(G)|
///   leaves       u64      d^n
///   symbols      u64      number of generator images
///   tables       u32[order * leaves]
///   parents      u32[order]           0xffffffff for the identity
///   word symbol  u32[order]           0xffffffff for the identity
///   generators   u32[symbols]
///   checksum     u64      FNV-1a over every preceding byte
///
/// A file that fails any check (magic, version, key, sizes, checksum, table
/// validity) is treated as a miss. Writes go to a temporary file renamed into
/// place, so concurrent processes never observe partial files.
class QuotientCache {
 public:
  explicit QuotientCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }
  std::filesystem::path path_for(const Automaton& automaton, std::size_t n) const;

  std::optional<LevelQuotient> load(const Automaton& automaton, std::size_t n) const;
  /// Best effort: I/O failures are ignored.
  void store(const Automaton& automaton, const LevelQuotient& q) const;

 private:
  std::filesystem::path directory_;
};

}  // namespace ssg

#endif  // SSG_QUOTIENT_CACHE_HPP
