#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dpdna {

// Payload schemes first (the five that can appear in a strand's Encoding
// field), accounting-only baselines after.
enum class SchemeId : std::uint8_t {
  two_bit = 0,
  code00,
  code01,
  code10,
  code11,
  church,
  goldman,
  blawat,
};

inline constexpr int kPayloadSchemeCount = 5;

inline constexpr bool is_payload_scheme(SchemeId s) {
  return static_cast<int>(s) < kPayloadSchemeCount;
}

// The doubled two-bit pattern of an unbalanced code; empty for two_bit.
inline constexpr std::optional<unsigned> doubled_pattern(SchemeId s) {
  switch (s) {
    case SchemeId::code00: return 0u;
    case SchemeId::code01: return 1u;
    case SchemeId::code10: return 2u;
    case SchemeId::code11: return 3u;
    default: return std::nullopt;
  }
}

inline constexpr SchemeId xx_scheme(unsigned pattern) {
  return static_cast<SchemeId>(static_cast<unsigned>(SchemeId::code00) + pattern);
}

const char* scheme_name(SchemeId s);
std::optional<SchemeId> scheme_from_name(std::string_view name);

// 4-bit Encoding-field ids. None of them contains the pattern '11', so the
// field always renders to exactly two nucleotides under the 11-code.
std::uint8_t scheme_wire_id(SchemeId s);
std::optional<SchemeId> scheme_from_wire(std::uint8_t id);
std::string wire_id_string(SchemeId s);  // e.g. "0101"

// Enabled-scheme set. At least one unbalanced code must stay enabled; the
// two-bit code cannot encode arbitrary segments on its own.
struct SchemeMask {
  std::uint8_t bits = 0b11111;

  bool contains(SchemeId s) const {
    return is_payload_scheme(s) && (bits >> static_cast<unsigned>(s)) & 1u;
  }
  void set(SchemeId s, bool on);
  bool any_xx() const { return (bits & 0b11110) != 0; }

  // Accepts "all", "dpac" (xx codes only), "11" and friends, or a comma list
  // of {2bit,00,01,10,11}.
  static SchemeMask parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const SchemeMask&, const SchemeMask&) = default;
};

}  // namespace dpdna
