#include "innerlip/cf64.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "innerlip/error.hpp"

namespace innerlip {

namespace {

template <class T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t off) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + off, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

[[noreturn]] void bad(const std::string& src, std::size_t off, const std::string& what) {
  fail(ErrorKind::io, src + ": malformed CF64 at byte offset " + std::to_string(off) + ": " + what);
}

}  // namespace

namespace cf64 {

std::string encode(const ComplexField& field) {
  const GridSpec& g = field.grid();
  std::string out;
  out.reserve(header_bytes + g.size() * 17);
  out.append("CF64", 4);
  put<std::uint32_t>(out, version);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n));
  put<double>(out, g.half_width);
  std::uint32_t flags = 0;
  if (field.supported_in_2D()) flags |= flag_supported_in_2D;
  if (field.has_mask()) flags |= flag_mask;
  put<std::uint32_t>(out, flags);
  for (const cplx& v : field.values()) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  if (field.has_mask())
    for (std::uint8_t m : field.mask()) out.push_back(static_cast<char>(m ? 1 : 0));
  return out;
}

ComplexField decode(const std::string& bytes, const std::string& source) {
  if (bytes.size() < header_bytes)
    bad(source, bytes.size(), "truncated header (" + std::to_string(bytes.size()) + " of 24 bytes)");
  if (bytes.compare(0, 4, "CF64") != 0) bad(source, 0, "bad magic");
  if (get<std::uint32_t>(bytes, 4) != version)
    bad(source, 4, "unsupported version " + std::to_string(get<std::uint32_t>(bytes, 4)));
  GridSpec g;
  g.n = get<std::uint32_t>(bytes, 8);
  if (g.n < 16 || (g.n & (g.n - 1)) != 0) bad(source, 8, "n=" + std::to_string(g.n) + " is not a power of two >= 16");
  g.half_width = get<double>(bytes, 12);
  if (!(g.half_width > 0.0) || !std::isfinite(g.half_width)) bad(source, 12, "half-width must be positive");
  const std::uint32_t flags = get<std::uint32_t>(bytes, 20);
  if (flags & ~(flag_supported_in_2D | flag_mask)) bad(source, 20, "unknown flag bits");
  const std::size_t count = g.size();
  const std::size_t need = header_bytes + count * 16 + ((flags & flag_mask) ? count : 0);
  if (bytes.size() < need) {
    bad(source, bytes.size(), "truncated payload (" + std::to_string(bytes.size()) + " of " + std::to_string(need) + " bytes)");
  }
  if (bytes.size() > need) bad(source, need, "trailing bytes");
  std::vector<cplx> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t off = header_bytes + 16 * i;
    v[i] = {get<double>(bytes, off), get<double>(bytes, off + 8)};
  }
  ComplexField f(g, std::move(v));
  if (flags & flag_mask) {
    std::vector<std::uint8_t> m(count);
    const std::size_t base = header_bytes + count * 16;
    for (std::size_t i = 0; i < count; ++i) {
      const auto b = static_cast<std::uint8_t>(bytes[base + i]);
      if (b > 1) bad(source, base + i, "mask byte must be 0 or 1");
      m[i] = b;
    }
    f.set_mask(std::move(m));
  }
  f.set_supported_in_2D_unchecked((flags & flag_supported_in_2D) != 0);
  return f;
}

void write(const std::filesystem::path& path, const ComplexField& field) {
  write_file_atomic(path, encode(field));
}

ComplexField read(const std::filesystem::path& path) { return decode(read_file(path), path.string()); }

}  // namespace cf64

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorKind::io, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) fail(ErrorKind::io, "write failed: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::io, "cannot rename into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "read failed: " + path.string());
  return ss.str();
}

}  // namespace innerlip
