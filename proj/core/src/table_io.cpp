#include "frobsieve/table_io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace frobsieve {
namespace {

constexpr char kMagic[4] = {'T', 'F', 'S', '1'};
constexpr uint8_t kVersion = 1;

void put_u64(std::ostream& out, uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}

uint64_t get_u64(std::istream& in) {
  std::array<char, 8> b;
  in.read(b.data(), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<uint64_t>(static_cast<uint8_t>(b[i])) << (8 * i);
  return v;
}

[[noreturn]] void corrupt(const std::string& path, const std::string& what) {
  fail_validation("CacheCorrupt", path + ": " + what);
}

}  // namespace

std::string kloosterman_cache_path(const std::string& dir, unsigned n, uint64_t p,
                                   uint64_t e, uint64_t d, uint64_t ell) {
  return dir + "/kl" + std::to_string(n) + "_p" + std::to_string(p) + "_e" +
         std::to_string(e) + "_d" + std::to_string(d) + "_l" + std::to_string(ell) +
         ".tfs1";
}

bool table_cache_supported(const TraceTable& t) {
  if (t.family != FamilyKind::Kloosterman) return false;
  if (t.emb.kind != Embedding::Kind::Residue) return false;
  if (t.normalized) return false;
  if (t.domain != TableDomain::FqStar) return false;
  for (bool v : t.valid)
    if (!v) return false;
  return t.rvals.size() == t.q - 1;
}

void write_table_cache(const std::string& path, const TraceTable& t) {
  if (!table_cache_supported(t))
    fail_validation("CacheUnsupported",
                    "only unnormalized residue Kloosterman tables are cacheable");
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail_resource("CacheIO", "cannot open " + tmp + " for writing");
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u64(out, t.p);
    put_u64(out, t.e);
    put_u64(out, t.n);
    put_u64(out, t.emb.d);
    put_u64(out, t.emb.ideal.ell);
    for (uint64_t v : t.rvals) put_u64(out, v);
    if (!out) fail_resource("CacheIO", "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    fail_resource("CacheIO", "cannot move " + tmp + " into place: " + ec.message());
  }
}

TraceTable read_table_cache(const std::string& path, const FiniteField& F,
                            const Embedding& emb, FamilyKind expected_family,
                            unsigned expected_n) {
  if (expected_family != FamilyKind::Kloosterman)
    fail_validation("CacheUnsupported", "only Kloosterman tables are cacheable");
  if (emb.kind != Embedding::Kind::Residue)
    fail_validation("CacheUnsupported", "only residue tables are cacheable");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_resource("CacheIO", "cannot open " + path);

  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4)) corrupt(path, "bad magic");
  int version = in.get();
  if (version != kVersion) corrupt(path, "unsupported version " + std::to_string(version));
  uint64_t p = get_u64(in), e = get_u64(in), n = get_u64(in), d = get_u64(in),
           ell = get_u64(in);
  if (!in) corrupt(path, "truncated header");
  if (p != F.p() || e != F.e()) corrupt(path, "field parameters differ");
  if (n != expected_n) corrupt(path, "table rank differs");
  if (d != emb.d || ell != emb.ideal.ell) corrupt(path, "embedding parameters differ");

  TraceTable t;
  t.family = FamilyKind::Kloosterman;
  t.description = "Kl_" + std::to_string(expected_n);
  t.n = expected_n;
  t.p = F.p();
  t.e = F.e();
  t.q = F.q();
  t.domain = TableDomain::FqStar;
  t.emb = emb;
  t.normalized = false;
  t.rvals.resize(t.q - 1);
  for (uint64_t i = 0; i < t.q - 1; ++i) {
    t.rvals[i] = get_u64(in);
    if (!in) corrupt(path, "truncated payload");
    if (t.rvals[i] >= ell) corrupt(path, "value outside the residue field");
  }
  in.get();
  if (!in.eof()) corrupt(path, "trailing bytes");
  t.valid.assign(t.q - 1, true);
  return t;
}

}  // namespace frobsieve
