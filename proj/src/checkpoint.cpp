#include "vistain/nnet/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>

namespace vistain::nnet {

static_assert(std::endian::native == std::endian::little,
              "checkpoint payloads are little-endian");

namespace {

constexpr char kMagic[8] = {'V', 'S', 'T', 'C', 'K', 'P', 'T', '1'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_u32(std::FILE* f, std::uint32_t v) {
  if (std::fwrite(&v, sizeof(v), 1, f) != 1) throw IoError("checkpoint write failed");
}

std::uint32_t read_u32(std::FILE* f, const std::string& path) {
  std::uint32_t v = 0;
  if (std::fread(&v, sizeof(v), 1, f) != 1)
    throw IoError("truncated checkpoint: " + path);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const NamedTensors& entries) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw IoError("cannot open checkpoint for writing: " + path);

  if (std::fwrite(kMagic, 1, sizeof(kMagic), f.get()) != sizeof(kMagic))
    throw IoError("checkpoint write failed: " + path);
  write_u32(f.get(), static_cast<std::uint32_t>(entries.size()));
  for (const auto& [name, tensor] : entries) {
    write_u32(f.get(), static_cast<std::uint32_t>(name.size()));
    if (std::fwrite(name.data(), 1, name.size(), f.get()) != name.size())
      throw IoError("checkpoint write failed: " + path);
    write_u32(f.get(), static_cast<std::uint32_t>(tensor->shape.size()));
    for (int d : tensor->shape) write_u32(f.get(), static_cast<std::uint32_t>(d));
  }
  for (const auto& [name, tensor] : entries) {
    const std::size_t n = static_cast<std::size_t>(tensor->numel());
    if (std::fwrite(tensor->data.data(), sizeof(float), n, f.get()) != n)
      throw IoError("checkpoint write failed: " + path);
  }
  if (std::fclose(f.release()) != 0) throw IoError("checkpoint close failed: " + path);
}

void load_checkpoint(const std::string& path, const NamedTensors& entries) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw IoError("cannot open checkpoint for reading: " + path);

  char magic[8];
  if (std::fread(magic, 1, sizeof(magic), f.get()) != sizeof(magic) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw IoError("not a checkpoint file (bad magic): " + path);

  const std::uint32_t count = read_u32(f.get(), path);
  if (count != entries.size())
    throw IoError("checkpoint " + path + " holds " + std::to_string(count) +
                  " tensors, expected " + std::to_string(entries.size()));

  for (const auto& [name, tensor] : entries) {
    const std::uint32_t name_len = read_u32(f.get(), path);
    std::string stored(name_len, '\0');
    if (std::fread(stored.data(), 1, name_len, f.get()) != name_len)
      throw IoError("truncated checkpoint: " + path);
    if (stored != name)
      throw IoError("checkpoint " + path + ": expected tensor '" + name + "', found '" +
                    stored + "'");
    const std::uint32_t rank = read_u32(f.get(), path);
    std::vector<int> shape(rank);
    for (std::uint32_t i = 0; i < rank; ++i)
      shape[i] = static_cast<int>(read_u32(f.get(), path));
    if (shape != tensor->shape)
      throw IoError("checkpoint " + path + ": tensor '" + name + "' has mismatched shape");
  }
  for (const auto& [name, tensor] : entries) {
    const std::size_t n = static_cast<std::size_t>(tensor->numel());
    if (std::fread(tensor->data.data(), sizeof(float), n, f.get()) != n)
      throw IoError("truncated checkpoint payload in " + path + " at tensor '" + name + "'");
  }

  // Anything left over means the manifest lied.
  char extra;
  if (std::fread(&extra, 1, 1, f.get()) == 1)
    throw IoError("checkpoint " + path + " has trailing bytes");
}

}  // namespace vistain::nnet
