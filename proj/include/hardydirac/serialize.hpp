#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "hardydirac/field.hpp"
#include "hardydirac/radial.hpp"

namespace hardydirac {

// Field container (see docs/formats.md): little-endian, magic "HDSF",
//   u32 version (1), u8 grid kind (0 cartesian, 1 radial-channel),
//   u8 scalar kind (0 complex64, 1 complex128), u8 components, u8 reserved,
//   grid descriptor, u64 value count, payload (interleaved re, im per value).
namespace detail {

static_assert(std::endian::native == std::endian::little,
              "field container I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InvalidArgument("field container: truncated stream");
  return v;
}

inline void put_magic(std::ostream& os) { os.write("HDSF", 4); }

inline void check_magic(std::istream& is) {
  char m[4];
  is.read(m, 4);
  if (!is || std::memcmp(m, "HDSF", 4) != 0)
    throw InvalidArgument("field container: bad magic");
}

}  // namespace detail

template <int NC>
void write_field(std::ostream& os, const CartesianField<NC>& f, bool single_precision = false) {
  detail::put_magic(os);
  detail::put<std::uint32_t>(os, 1);
  detail::put<std::uint8_t>(os, 0);
  detail::put<std::uint8_t>(os, single_precision ? 0 : 1);
  detail::put<std::uint8_t>(os, NC);
  detail::put<std::uint8_t>(os, 0);
  detail::put<double>(os, f.grid.half_width());
  detail::put<std::uint32_t>(os, f.grid.n());
  const std::uint64_t count = NC * f.node_count();
  detail::put<std::uint64_t>(os, count);
  const Complex* data = f.values.data();
  for (std::uint64_t i = 0; i < count; ++i) {
    if (single_precision) {
      detail::put<float>(os, static_cast<float>(data[i].real()));
      detail::put<float>(os, static_cast<float>(data[i].imag()));
    } else {
      detail::put<double>(os, data[i].real());
      detail::put<double>(os, data[i].imag());
    }
  }
}

inline void write_channel(std::ostream& os, const RadialChannel& ch) {
  detail::put_magic(os);
  detail::put<std::uint32_t>(os, 1);
  detail::put<std::uint8_t>(os, 1);
  detail::put<std::uint8_t>(os, 1);
  detail::put<std::uint8_t>(os, 2);
  detail::put<std::uint8_t>(os, 0);
  detail::put<double>(os, ch.grid.r_min());
  detail::put<double>(os, ch.grid.r_max());
  detail::put<std::uint32_t>(os, ch.grid.size());
  detail::put<std::int32_t>(os, ch.kappa);
  detail::put<std::uint64_t>(os, 2 * static_cast<std::uint64_t>(ch.grid.size()));
  for (int i = 0; i < ch.grid.size(); ++i) {
    detail::put<double>(os, ch.f[i].real());
    detail::put<double>(os, ch.f[i].imag());
  }
  for (int i = 0; i < ch.grid.size(); ++i) {
    detail::put<double>(os, ch.g[i].real());
    detail::put<double>(os, ch.g[i].imag());
  }
}

struct FieldContainerHeader {
  std::uint8_t grid_kind;
  std::uint8_t scalar_kind;
  std::uint8_t components;
};

inline FieldContainerHeader read_header(std::istream& is) {
  detail::check_magic(is);
  const auto version = detail::get<std::uint32_t>(is);
  if (version != 1) throw InvalidArgument("field container: unsupported version");
  FieldContainerHeader h;
  h.grid_kind = detail::get<std::uint8_t>(is);
  h.scalar_kind = detail::get<std::uint8_t>(is);
  h.components = detail::get<std::uint8_t>(is);
  detail::get<std::uint8_t>(is);
  return h;
}

template <int NC>
CartesianField<NC> read_field(std::istream& is) {
  const FieldContainerHeader h = read_header(is);
  if (h.grid_kind != 0) throw InvalidArgument("field container: expected a cartesian field");
  if (h.components != NC) throw InvalidArgument("field container: component count mismatch");
  const double half_width = detail::get<double>(is);
  const auto n = detail::get<std::uint32_t>(is);
  CartesianField<NC> f(CartesianGrid(half_width, static_cast<int>(n)));
  const auto count = detail::get<std::uint64_t>(is);
  if (count != NC * f.node_count()) throw InvalidArgument("field container: count mismatch");
  Complex* data = f.values.data();
  for (std::uint64_t i = 0; i < count; ++i) {
    if (h.scalar_kind == 0) {
      const float re = detail::get<float>(is);
      const float im = detail::get<float>(is);
      data[i] = Complex(re, im);
    } else {
      const double re = detail::get<double>(is);
      const double im = detail::get<double>(is);
      data[i] = Complex(re, im);
    }
  }
  return f;
}

inline RadialChannel read_channel(std::istream& is) {
  const FieldContainerHeader h = read_header(is);
  if (h.grid_kind != 1) throw InvalidArgument("field container: expected a radial channel");
  const double r_min = detail::get<double>(is);
  const double r_max = detail::get<double>(is);
  const auto m = detail::get<std::uint32_t>(is);
  const auto kappa = detail::get<std::int32_t>(is);
  RadialChannel ch(kappa, RadialGrid(r_min, r_max, static_cast<int>(m)));
  const auto count = detail::get<std::uint64_t>(is);
  if (count != 2 * static_cast<std::uint64_t>(m))
    throw InvalidArgument("field container: count mismatch");
  for (int i = 0; i < static_cast<int>(m); ++i) {
    const double re = detail::get<double>(is);
    const double im = detail::get<double>(is);
    ch.f[i] = Complex(re, im);
  }
  for (int i = 0; i < static_cast<int>(m); ++i) {
    const double re = detail::get<double>(is);
    const double im = detail::get<double>(is);
    ch.g[i] = Complex(re, im);
  }
  return ch;
}

}  // namespace hardydirac
