#include "ssg/quotient_cache.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

namespace ssg {

namespace {

constexpr char kMagic[8] = {'S', 'S', 'G', 'Q', 'U', 'O', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::string& bytes, std::size_t length) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < length; ++i) {
    h ^= static_cast<unsigned char>(bytes[i]);
    h *= 1099511628211ull;
  }
  return h;
}

template <typename T>
void put(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xffu));
  }
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  bool get(T& value) {
    if (pos_ + sizeof(T) > bytes_.size()) return false;
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    value = static_cast<T>(v);
    return true;
  }

  bool get_array(std::vector<std::uint32_t>& out, std::uint64_t count) {
    if (count > (bytes_.size() - pos_) / 4) return false;
    out.resize(count);
    for (std::uint32_t& x : out) get(x);
    return true;
  }

  std::size_t position() const { return pos_; }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 8;
};

}  // namespace

QuotientCache::QuotientCache(std::filesystem::path directory)
    : directory_(std::move(directory)) {}

std::filesystem::path QuotientCache::path_for(const Automaton& automaton,
                                              std::size_t n) const {
  std::ostringstream name;
  name << std::hex << automaton.content_hash() << std::dec << "-level" << n << ".ssgq";
  return directory_ / name.str();
}

std::optional<LevelQuotient> QuotientCache::load(const Automaton& automaton,
                                                 std::size_t n) const {
  std::ifstream in(path_for(automaton, n), std::ios::binary);
  if (!in) return std::nullopt;
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 8 + 8 || std::memcmp(bytes.data(), kMagic, 8) != 0) return std::nullopt;

  std::uint64_t stored_sum = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    stored_sum |= static_cast<std::uint64_t>(
                      static_cast<unsigned char>(bytes[bytes.size() - 8 + i])) << (8 * i);
  }
  if (fnv1a(bytes, bytes.size() - 8) != stored_sum) return std::nullopt;

  Reader r(bytes);
  std::uint32_t version = 0, degree = 0, level = 0, reserved = 0;
  std::uint64_t hash = 0, order = 0, leaves = 0, symbols = 0;
  if (!r.get(version) || !r.get(degree) || !r.get(level) || !r.get(reserved) ||
      !r.get(hash) || !r.get(order) || !r.get(leaves) || !r.get(symbols)) {
    return std::nullopt;
  }
  if (version != kVersion || degree != automaton.degree() || level != n ||
      hash != automaton.content_hash() || symbols != automaton.num_symbols() ||
      order == 0 || leaves == 0 || order > (bytes.size() / 4) / leaves) {
    return std::nullopt;
  }
  std::vector<std::uint32_t> tables, parents, word_symbols, generators;
  if (!r.get_array(tables, order * leaves) || !r.get_array(parents, order) ||
      !r.get_array(word_symbols, order) || !r.get_array(generators, symbols)) {
    return std::nullopt;
  }
  if (r.position() + 8 != bytes.size()) return std::nullopt;
  try {
    return LevelQuotient(degree, level, std::move(tables), std::move(parents),
                         std::move(word_symbols), std::move(generators));
  } catch (const Error&) {
    return std::nullopt;
  }
}

void QuotientCache::store(const Automaton& automaton, const LevelQuotient& q) const {
  std::string out(kMagic, 8);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(q.degree()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(q.level()));
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, automaton.content_hash());
  put<std::uint64_t>(out, q.order());
  put<std::uint64_t>(out, q.leaves());
  put<std::uint64_t>(out, q.generator_images().size());
  for (std::uint32_t x : q.raw_tables()) put(out, x);
  for (std::uint32_t x : q.raw_parents()) put(out, x);
  for (std::uint32_t x : q.raw_symbols()) put(out, x);
  for (std::uint32_t x : q.generator_images()) put(out, x);
  put<std::uint64_t>(out, fnv1a(out, out.size()));

  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  const std::filesystem::path target = path_for(automaton, q.level());
  std::random_device entropy;
  std::filesystem::path temp = target;
  temp += ".tmp" + std::to_string(entropy());
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) return;
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) {
      std::filesystem::remove(temp, ec);
      return;
    }
  }
  std::filesystem::rename(temp, target, ec);
  if (ec) std::filesystem::remove(temp, ec);
}

}  // namespace ssg
