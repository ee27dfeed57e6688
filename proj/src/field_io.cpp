#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "configdensity/error.hpp"
#include "configdensity/field.hpp"

namespace configdensity {

namespace {

constexpr std::array<unsigned char, 4> kMagic{'D', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 3 * 8 + 8 + 3 * 8 + 4;

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}
void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}
void put_f64(std::vector<unsigned char>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
 public:
  explicit Reader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  std::uint64_t u(int width) {
    if (pos_ + static_cast<std::size_t>(width) > bytes_.size()) {
      throw Error("bad_field_file", "file is truncated");
    }
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + static_cast<std::size_t>(b)]) << (8 * b);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  double f64() { return std::bit_cast<double>(u(8)); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<unsigned char> encode_field(const DensityField& f) {
  const Grid& g = f.grid();
  std::vector<unsigned char> out(kMagic.begin(), kMagic.end());
  out.reserve(kHeaderBytes + 8 * g.size());
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(g.dim));
  for (int a = 0; a < 3; ++a) put_u64(out, g.shape[a]);
  put_f64(out, g.spacing);
  for (int a = 0; a < 3; ++a) put_f64(out, g.origin[a]);
  put_u32(out, f.boundary() == Boundary::periodic ? 1u : 0u);
  for (double v : f.values()) put_f64(out, v);
  return out;
}

DensityField decode_field(std::span<const unsigned char> bytes) {
  if (bytes.size() < kHeaderBytes) throw Error("bad_field_file", "header is truncated");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error("bad_field_file", "bad magic");
  }
  Reader r(bytes.subspan(4));
  if (r.u(4) != kVersion) throw Error("bad_field_file", "unsupported version");
  const auto dim = r.u(4);
  if (dim < 1 || dim > 3) throw Error("bad_field_file", "dimension out of range");
  Grid g;
  g.dim = static_cast<int>(dim);
  for (int a = 0; a < 3; ++a) g.shape[a] = static_cast<std::size_t>(r.u(8));
  g.spacing = r.f64();
  for (int a = 0; a < 3; ++a) g.origin[a] = r.f64();
  const auto boundary = r.u(4);
  if (boundary > 1) throw Error("bad_field_file", "unknown boundary code");
  try {
    g.validate();
  } catch (const Error& e) {
    throw Error("bad_field_file", e.what());
  }
  // Guard the size product against overflow before trusting it.
  const std::size_t n = g.size();
  if (n / g.shape[0] / g.shape[1] != g.shape[2] || r.remaining() / 8 < n) {
    throw Error("bad_field_file", "value block is truncated");
  }
  if (r.remaining() != 8 * n) throw Error("bad_field_file", "trailing bytes after values");
  std::vector<double> values(n);
  for (auto& v : values) v = r.f64();
  return DensityField(g, std::move(values),
                      boundary == 1 ? Boundary::periodic : Boundary::zero_outside);
}

void save_field(const DensityField& f, const std::filesystem::path& path) {
  const auto bytes = encode_field(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io_error", "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("io_error", "failed writing " + path.string());
}

DensityField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_field(bytes);
}

}  // namespace configdensity
