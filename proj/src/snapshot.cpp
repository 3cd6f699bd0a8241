#include "bcns/snapshot.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bcns {
namespace {

constexpr const char* kMagic = "BCNS1";

void put_le(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  os.write(buf, 8);
}

double get_le(std::istream& is) {
  char buf[8];
  if (!is.read(buf, 8)) throw std::runtime_error("snapshot: truncated coefficient payload");
  std::uint64_t bits = 0;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

std::string format_time(double t) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& field, double time) {
  const Grid& g = field.grid();
  os << kMagic << ' ' << g.dim() << ' ' << g.n() << ' ' << (field.rank() == Rank::scalar ? 0 : 1) << ' '
     << format_time(time) << '\n';
  for (const auto& z : field.data()) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
  if (!os) throw std::runtime_error("snapshot: write failed");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path.string() + " for writing");
  write_snapshot(os, field, time);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("snapshot: missing header");
  std::istringstream hs(line);
  std::string magic, time_text;
  int d = 0, n = 0, rank = -1;
  if (!(hs >> magic >> d >> n >> rank >> time_text) || magic != kMagic) {
    throw std::runtime_error("snapshot: corrupt header '" + line + "'");
  }
  std::string extra;
  if (hs >> extra) throw std::runtime_error("snapshot: trailing header tokens in '" + line + "'");
  if (rank != 0 && rank != 1) throw std::runtime_error("snapshot: rank must be 0 or 1");
  double t = 0.0;
  auto res = std::from_chars(time_text.data(), time_text.data() + time_text.size(), t);
  if (res.ec != std::errc{} || res.ptr != time_text.data() + time_text.size()) {
    throw std::runtime_error("snapshot: bad time field '" + time_text + "'");
  }
  Grid grid = [&] {
    try {
      return make_grid(d, n);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("snapshot: ") + e.what());
    }
  }();
  SpectralField field(grid, rank == 0 ? Rank::scalar : Rank::vector);
  for (auto& z : field.data()) {
    const double re = get_le(is);
    const double im = get_le(is);
    z = cplx(re, im);
  }
  return {std::move(field), t};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
  return read_snapshot(is);
}

}  // namespace bcns
