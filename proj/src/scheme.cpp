#include "dpdna/scheme.hpp"

#include <array>

#include "dpdna/error.hpp"

namespace dpdna {

const char* scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::two_bit: return "2bit";
    case SchemeId::code00: return "00";
    case SchemeId::code01: return "01";
    case SchemeId::code10: return "10";
    case SchemeId::code11: return "11";
    case SchemeId::church: return "church";
    case SchemeId::goldman: return "goldman";
    case SchemeId::blawat: return "blawat";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    auto s = static_cast<SchemeId>(i);
    if (name == scheme_name(s)) return s;
  }
  if (name == "twobit" || name == "2-bit") return SchemeId::two_bit;
  return std::nullopt;
}

std::uint8_t scheme_wire_id(SchemeId s) {
  switch (s) {
    case SchemeId::two_bit: return 0b0000;
    case SchemeId::code00: return 0b0001;
    case SchemeId::code01: return 0b0010;
    case SchemeId::code10: return 0b0100;
    case SchemeId::code11: return 0b0101;
    default:
      throw Error(ErrorKind::invalid_argument, "scheme has no wire id");
  }
}

std::optional<SchemeId> scheme_from_wire(std::uint8_t id) {
  switch (id) {
    case 0b0000: return SchemeId::two_bit;
    case 0b0001: return SchemeId::code00;
    case 0b0010: return SchemeId::code01;
    case 0b0100: return SchemeId::code10;
    case 0b0101: return SchemeId::code11;
    default: return std::nullopt;
  }
}

std::string wire_id_string(SchemeId s) {
  std::uint8_t id = scheme_wire_id(s);
  std::string out(4, '0');
  for (int i = 0; i < 4; ++i)
    if ((id >> (3 - i)) & 1u) out[i] = '1';
  return out;
}

void SchemeMask::set(SchemeId s, bool on) {
  if (!is_payload_scheme(s))
    throw Error(ErrorKind::invalid_argument, "mask covers payload schemes only");
  const std::uint8_t bit = std::uint8_t(1u << static_cast<unsigned>(s));
  bits = on ? std::uint8_t(bits | bit) : std::uint8_t(bits & ~bit);
}

SchemeMask SchemeMask::parse(std::string_view text) {
  if (text.empty() || text == "all") return SchemeMask{};
  if (text == "dpac" || text == "dpac-only") return SchemeMask{0b11110};
  SchemeMask m{0};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    std::optional<SchemeId> s;
    if (!tok.empty()) s = scheme_from_name(tok);
    if (!s || !is_payload_scheme(*s))
      throw Error(ErrorKind::config,
                  "unknown scheme '" + std::string(tok) +
                      "' (expected 2bit, 00, 01, 10, 11, all, or dpac)");
    m.set(*s, true);
    pos = comma + 1;
  }
  return m;
}

std::string SchemeMask::to_string() const {
  std::string out;
  for (int i = 0; i < kPayloadSchemeCount; ++i) {
    auto s = static_cast<SchemeId>(i);
    if (!contains(s)) continue;
    if (!out.empty()) out += ',';
    out += scheme_name(s);
  }
  return out;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::io: return "io";
    case ErrorKind::config: return "config";
    case ErrorKind::parse: return "parse";
    case ErrorKind::integrity: return "integrity";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::internal: return "internal";
  }
  return "?";
}

}  // namespace dpdna
