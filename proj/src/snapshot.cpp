#include "lcflow/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include "json.hpp"

#include "lcflow/errors.hpp"

namespace lcflow {

namespace {

std::filesystem::path with_ext(std::filesystem::path p, const char* ext) {
  return p.replace_extension(ext);
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& stem, const SnapshotMeta& meta,
                    std::span<const double> values) {
  const std::size_t expected =
      static_cast<std::size_t>(meta.n) * meta.n * meta.n * static_cast<std::size_t>(meta.components);
  if (values.size() != expected) throw IoError("snapshot value count does not match metadata");

  std::ofstream bin(with_ext(stem, ".bin"), std::ios::binary);
  if (!bin) throw IoError("cannot open " + with_ext(stem, ".bin").string() + " for writing");
  for (double v : values) {
    const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
    bin.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!bin) throw IoError("write failed for " + with_ext(stem, ".bin").string());

  nlohmann::json j{{"name", meta.name},
                   {"n", meta.n},
                   {"L", meta.length},
                   {"components", meta.components},
                   {"t", meta.t}};
  std::ofstream js(with_ext(stem, ".json"));
  if (!js) throw IoError("cannot open " + with_ext(stem, ".json").string() + " for writing");
  js << j.dump(2) << '\n';
}

RawSnapshot read_snapshot(const std::filesystem::path& stem) {
  RawSnapshot out;
  std::ifstream js(with_ext(stem, ".json"));
  if (!js) throw IoError("cannot open " + with_ext(stem, ".json").string());
  try {
    const auto j = nlohmann::json::parse(js);
    out.meta.name = j.at("name").get<std::string>();
    out.meta.n = j.at("n").get<int>();
    out.meta.length = j.at("L").get<double>();
    out.meta.components = j.at("components").get<int>();
    out.meta.t = j.at("t").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed snapshot metadata " + with_ext(stem, ".json").string() + ": " +
                  e.what());
  }
  if (out.meta.n <= 0 || out.meta.components <= 0) throw IoError("invalid snapshot metadata");

  const std::size_t count = static_cast<std::size_t>(out.meta.n) * out.meta.n * out.meta.n *
                            static_cast<std::size_t>(out.meta.components);
  std::ifstream bin(with_ext(stem, ".bin"), std::ios::binary | std::ios::ate);
  if (!bin) throw IoError("cannot open " + with_ext(stem, ".bin").string());
  if (static_cast<std::size_t>(bin.tellg()) != count * sizeof(double)) {
    throw IoError("snapshot " + with_ext(stem, ".bin").string() + " has wrong size");
  }
  bin.seekg(0);
  out.values.resize(count);
  for (auto& v : out.values) {
    std::uint64_t bits = 0;
    bin.read(reinterpret_cast<char*>(&bits), sizeof bits);
    v = std::bit_cast<double>(to_little_endian(bits));
  }
  if (!bin) throw IoError("read failed for " + with_ext(stem, ".bin").string());
  return out;
}

}  // namespace lcflow
