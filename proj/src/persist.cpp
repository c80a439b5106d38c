#include "acg/persist.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "acg/errors.hpp"

namespace acg {

namespace {

constexpr char kMagic[8] = {'A', 'C', 'P', 'A', 'T', 'H', '1', '\0'};

template <typename T>
void put(std::ostream& os, T v) {
  // the toolchain targets are little-endian; serialize raw
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IntegrityError("archive truncated");
  return v;
}

}  // namespace

void save_paths(const std::string& file, const Grid& grid, const std::vector<Path>& paths,
                std::uint64_t config_hash) {
  for (const auto& p : paths)
    if (!(p.grid == grid)) throw ContractViolation("save_paths: mixed grids");
  const std::string tmp = file + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IntegrityError("cannot open " + tmp + " for writing");
    os.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(os, 1);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n));
    put<double>(os, grid.x_minus);
    put<double>(os, grid.x_plus);
    put<std::uint64_t>(os, paths.size());
    put<std::uint64_t>(os, config_hash);
    for (const auto& p : paths)
      os.write(reinterpret_cast<const char*>(p.values.data()),
               static_cast<std::streamsize>(p.values.size() * sizeof(double)));
    if (!os) throw IntegrityError("write failure on " + tmp);
  }
  if (std::rename(tmp.c_str(), file.c_str()) != 0)
    throw IntegrityError("cannot move archive into place: " + file);
}

std::vector<Path> load_paths(const std::string& file, ArchiveHeader* header) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw IntegrityError("cannot open " + file);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw IntegrityError("not a path archive: " + file);
  ArchiveHeader h;
  h.version = get<std::uint32_t>(is);
  if (h.version != 1)
    throw IntegrityError("unsupported archive version " + std::to_string(h.version) +
                         " (no migration path)");
  h.n = get<std::uint32_t>(is);
  h.x_minus = get<double>(is);
  h.x_plus = get<double>(is);
  h.count = get<std::uint64_t>(is);
  h.config_hash = get<std::uint64_t>(is);
  if (!(h.x_plus > h.x_minus) || h.n < 1 || h.count > (1ull << 32))
    throw IntegrityError("corrupt archive header: " + file);
  Grid grid(h.x_minus, h.x_plus, static_cast<int>(h.n));
  std::vector<Path> paths;
  paths.reserve(h.count);
  const std::size_t np = static_cast<std::size_t>(grid.num_points());
  for (std::uint64_t k = 0; k < h.count; ++k) {
    std::vector<double> vals(np);
    is.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(np * sizeof(double)));
    if (!is) throw IntegrityError("archive payload shorter than declared count");
    paths.emplace_back(grid, std::move(vals));
  }
  if (header) *header = h;
  return paths;
}

void save_ensemble(const std::string& file, const Ensemble& ens) {
  save_paths(file, ens.grid, ens.paths, ens.config_hash);
}

Ensemble load_ensemble(const std::string& file) {
  Ensemble ens;
  ArchiveHeader h;
  ens.paths = load_paths(file, &h);
  ens.grid = ens.paths.empty() ? Grid(h.x_minus, h.x_plus, static_cast<int>(h.n))
                               : ens.paths.front().grid;
  ens.config_hash = h.config_hash;
  if (!ens.paths.empty()) {
    ens.u_minus = ens.paths.front().values.front();
    ens.u_plus = ens.paths.front().values.back();
  }
  return ens;
}

void export_csv(const std::string& file, const std::vector<Path>& paths) {
  std::ostringstream os;
  os << "x,u\n";
  for (const auto& p : paths) {
    for (int i = 0; i < p.num_points(); ++i) os << p.grid.point(i) << "," << p.values[i] << "\n";
    os << "\n";
  }
  write_text_atomic(file, os.str());
}

void write_text_atomic(const std::string& file, const std::string& payload) {
  const std::string tmp = file + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw IntegrityError("cannot open " + tmp);
    os << payload;
    if (!os) throw IntegrityError("write failure on " + tmp);
  }
  if (std::rename(tmp.c_str(), file.c_str()) != 0)
    throw IntegrityError("cannot move file into place: " + file);
}

std::string read_text(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw IntegrityError("cannot open " + file);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace acg
