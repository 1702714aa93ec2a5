#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace redundancy {

// Arithmetic in GF(2^Bits) with the given primitive polynomial, via log/antilog tables.
template <unsigned Bits, std::uint32_t Poly>
class GaloisField {
  static_assert(Bits == 8 || Bits == 16, "symbols are one or two bytes");

 public:
  using value_type = std::conditional_t<Bits == 8, std::uint8_t, std::uint16_t>;
  static constexpr unsigned bits = Bits;
  static constexpr std::uint32_t order = 1u << Bits;
  static constexpr std::size_t symbol_bytes = Bits / 8;

  static value_type add(value_type a, value_type b) { return static_cast<value_type>(a ^ b); }
  static value_type sub(value_type a, value_type b) { return add(a, b); }

  static value_type mul(value_type a, value_type b) {
    if (a == 0 || b == 0) return 0;
    const auto& t = tables();
    return t.exp[t.log[a] + t.log[b]];
  }

  static value_type inv(value_type a) {
    if (a == 0) throw std::domain_error("zero has no inverse in a Galois field");
    const auto& t = tables();
    return t.exp[(order - 1) - t.log[a]];
  }

  static value_type div(value_type a, value_type b) { return mul(a, inv(b)); }

  static value_type pow(value_type a, unsigned e) {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const auto& t = tables();
    return t.exp[(static_cast<std::uint64_t>(t.log[a]) * e) % (order - 1)];
  }

  // Number of distinct non-zero powers of the generator 2; equals order - 1 iff Poly is primitive.
  static std::size_t generator_period() { return tables().period; }

 private:
  struct Tables {
    std::vector<value_type> exp;     // doubled so log[a] + log[b] needs no reduction
    std::vector<std::uint32_t> log;
    std::size_t period = 0;
  };

  static const Tables& tables() {
    static const Tables t = [] {
      Tables out;
      out.exp.assign(2 * order, 0);
      out.log.assign(order, 0);
      std::vector<bool> seen(order, false);
      std::uint32_t x = 1;
      for (std::uint32_t i = 0; i < order - 1; ++i) {
        out.exp[i] = static_cast<value_type>(x);
        if (!seen[x]) {
          seen[x] = true;
          ++out.period;
        }
        out.log[x] = i;
        x <<= 1;
        if (x & order) x ^= Poly;
      }
      for (std::uint32_t i = order - 1; i < 2 * order; ++i) out.exp[i] = out.exp[i - (order - 1)];
      return out;
    }();
    return t;
  }
};

using GF256 = GaloisField<8, 0x11d>;
using GF65536 = GaloisField<16, 0x1100b>;

}  // namespace redundancy
