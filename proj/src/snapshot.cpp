#include "samrad/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace samrad {

namespace {

void write_field(std::ofstream& out, const Hierarchy& h,
                 const CompositeScalar& f) {
  std::vector<double> buf;
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      const IndexBox& b = lev.patches[p].box;
      const Array3& a = f.patch(l, int(p));
      buf.clear();
      buf.reserve(std::size_t(b.volume()));
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) buf.push_back(a(i, j, k));
      out.write(reinterpret_cast<const char*>(buf.data()),
                std::streamsize(buf.size() * sizeof(double)));
    }
  }
}

void read_field(std::ifstream& in, const Hierarchy& h, CompositeScalar& f) {
  std::vector<double> buf;
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      const IndexBox& b = lev.patches[p].box;
      Array3& a = f.patch(l, int(p));
      buf.resize(std::size_t(b.volume()));
      in.read(reinterpret_cast<char*>(buf.data()),
              std::streamsize(buf.size() * sizeof(double)));
      if (!in) fail("snapshot truncated in field data");
      std::size_t c = 0;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) a(i, j, k) = buf[c++];
    }
  }
}

}  // namespace

void write_snapshot(const std::string& path, const Hierarchy& h,
                    const CompositeState& u, std::int64_t step, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write snapshot: " + path);
  char tbuf[40];
  std::snprintf(tbuf, sizeof tbuf, "%.17g", time);
  out << "samrad-amr 1\n";
  out << "step " << step << "\n";
  out << "time " << tbuf << "\n";
  out << "ratio " << h.ratio << "\n";
  out << "base_resolution " << h.domain.base_resolution << "\n";
  out << "bounds";
  for (int d = 0; d < 3; ++d) out << " " << h.domain.bounds.lo[d];
  for (int d = 0; d < 3; ++d) out << " " << h.domain.bounds.hi[d];
  out << "\n";
  out << "levels " << h.num_levels() << "\n";
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    out << "patches " << l << " " << lev.patches.size() << "\n";
    for (const Patch& p : lev.patches) {
      out << "patch";
      for (int d = 0; d < 3; ++d) out << " " << p.box.lo[d];
      for (int d = 0; d < 3; ++d) out << " " << p.box.hi[d];
      out << "\n";
    }
  }
  out << "fields 2 E T\n";
  out << "data\n";
  write_field(out, h, u.E);
  write_field(out, h, u.T);
  if (!out) fail("snapshot write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open snapshot: " + path);

  auto expect = [&](const std::string& tag) -> std::istringstream {
    std::string line;
    if (!std::getline(in, line)) fail("snapshot truncated before " + tag);
    std::istringstream ss(line);
    std::string got;
    ss >> got;
    if (got != tag) fail("snapshot: expected '" + tag + "', got '" + got + "'");
    return ss;
  };

  {
    auto ss = expect("samrad-amr");
    int version = 0;
    ss >> version;
    if (version != 1) fail("unsupported snapshot version");
  }
  Snapshot snap;
  expect("step") >> snap.step;
  expect("time") >> snap.time;
  DomainSpec dom;
  int ratio = 2;
  expect("ratio") >> ratio;
  expect("base_resolution") >> dom.base_resolution;
  {
    auto ss = expect("bounds");
    for (int d = 0; d < 3; ++d) ss >> dom.bounds.lo[d];
    for (int d = 0; d < 3; ++d) ss >> dom.bounds.hi[d];
  }
  int nl = 0;
  expect("levels") >> nl;
  if (nl < 1 || nl > 12) fail("snapshot: bad level count");
  std::vector<std::vector<IndexBox>> refine;
  for (int l = 1; l <= nl; ++l) {
    int lv = 0;
    std::size_t np = 0;
    auto ss = expect("patches");
    ss >> lv >> np;
    if (lv != l) fail("snapshot: level order");
    std::vector<IndexBox> boxes;
    for (std::size_t p = 0; p < np; ++p) {
      auto ps = expect("patch");
      IndexBox b;
      for (int d = 0; d < 3; ++d) ps >> b.lo[d];
      for (int d = 0; d < 3; ++d) ps >> b.hi[d];
      boxes.push_back(b);
    }
    if (l >= 2) {
      for (IndexBox& b : boxes) b = b.coarsened(ratio);
      refine.push_back(std::move(boxes));
    }
  }
  expect("fields");
  expect("data");

  snap.hier = build_hierarchy(dom, refine, ratio);
  snap.u.define(snap.hier);
  read_field(in, snap.hier, snap.u.E);
  read_field(in, snap.hier, snap.u.T);
  return snap;
}

}  // namespace samrad
