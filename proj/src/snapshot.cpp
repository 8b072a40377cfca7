// SPDX-License-Identifier: Apache-2.0
#include "tpoe/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "tpoe/error.hpp"

namespace tpoe {

namespace {

constexpr char kMagic[8] = {'T', 'P', 'O', 'E', 'S', 'N', 'A', 'P'};

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

template <typename T>
void put(std::vector<char>& buf, T value) {
  const auto* p = reinterpret_cast<const char*>(&value);
  buf.insert(buf.end(), p, p + sizeof(T));
}

template <typename T>
T get(const std::vector<char>& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) fail(ErrorCode::kIoFailure, "snapshot truncated");
  T value;
  std::memcpy(&value, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

}  // namespace

void save_snapshot(const SpaceTimeField& field, const std::filesystem::path& path) {
  const TorusDomain& d = field.domain();
  std::vector<char> buf(kMagic, kMagic + sizeof(kMagic));
  put<std::uint32_t>(buf, kSnapshotVersion);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(d.n));
  put<double>(buf, d.L);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(d.N));
  put<double>(buf, d.T);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(d.Nt));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.components()));
  const auto samples = field.samples();
  const auto* raw = reinterpret_cast<const char*>(samples.data());
  buf.insert(buf.end(), raw, raw + samples.size_bytes());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) fail(ErrorCode::kIoFailure, "write failed for " + path.string());
}

SpaceTimeField load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < sizeof(kMagic) || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
    fail(ErrorCode::kIoFailure, path.string() + " is not a field snapshot");
  }
  std::size_t pos = sizeof(kMagic);
  const auto version = get<std::uint32_t>(buf, pos);
  if (version != kSnapshotVersion) fail(ErrorCode::kIoFailure, "unsupported snapshot version " + std::to_string(version));

  TorusDomain d;
  d.n = static_cast<int>(get<std::uint32_t>(buf, pos));
  d.L = get<double>(buf, pos);
  d.N = static_cast<int>(get<std::uint32_t>(buf, pos));
  d.T = get<double>(buf, pos);
  d.Nt = static_cast<int>(get<std::uint32_t>(buf, pos));
  const int components = static_cast<int>(get<std::uint32_t>(buf, pos));
  d.validate();

  const std::size_t count = d.total_points() * static_cast<std::size_t>(components);
  if (buf.size() - pos != count * sizeof(double)) {
    fail(ErrorCode::kIoFailure, "snapshot payload size does not match its header");
  }
  std::vector<double> samples(count);
  std::memcpy(samples.data(), buf.data() + pos, count * sizeof(double));
  return SpaceTimeField(d, components, std::move(samples));
}

}  // namespace tpoe
