#include "lattice_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace configdensity::detail {

namespace {

struct Split {
  std::array<long, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
};

Split split_offset(const Grid& g, const std::array<double, 3>& v) {
  Split s;
  for (int a = 0; a < g.dim; ++a) {
    const double u = v[a] / g.spacing;
    double fl = std::floor(u);
    double fr = u - fl;
    // Snap offsets that sit on the lattice up to rounding noise.
    if (fr < 1e-12) {
      fr = 0.0;
    } else if (fr > 1.0 - 1e-12) {
      fr = 0.0;
      fl += 1.0;
    }
    s.base[a] = static_cast<long>(fl);
    s.frac[a] = fr;
  }
  return s;
}

long wrap(long i, long n) {
  i %= n;
  return i < 0 ? i + n : i;
}

// Calls row(flat_a, flat_b, count) for maximal runs along the last axis where
// both a(x) and b(x + shift) are addressable contiguously. Zero_outside reads
// of b outside the grid are skipped (they contribute nothing).
template <class RowFn>
void for_each_row(const Lattice& a, const Lattice& b, const std::array<long, 3>& shift,
                  RowFn&& row) {
  const Grid& g = *a.grid;
  const std::array<long, 3> n{static_cast<long>(g.shape[0]), static_cast<long>(g.shape[1]),
                              static_cast<long>(g.shape[2])};
  std::array<long, 3> lo = a.support.lo;
  std::array<long, 3> hi = a.support.hi;
  const bool periodic = b.boundary == Boundary::periodic;
  if (!periodic) {
    for (int ax = 0; ax < 3; ++ax) {
      // b's support shifted back into a's index space.
      lo[ax] = std::max(lo[ax], b.support.lo[ax] - shift[ax]);
      hi[ax] = std::min(hi[ax], b.support.hi[ax] - shift[ax]);
      if (lo[ax] >= hi[ax]) return;
    }
  }
  // Runs go along the fastest used axis; the other two are outer loops.
  const int last = g.dim - 1;
  const int o0 = last == 0 ? 1 : 0;
  const int o1 = last == 2 ? 1 : 2;
  std::array<long, 3> ia{0, 0, 0};
  std::array<long, 3> ib{0, 0, 0};
  for (long p = lo[o0]; p < hi[o0]; ++p) {
    ia[o0] = p;
    ib[o0] = periodic ? wrap(p + shift[o0], n[o0]) : p + shift[o0];
    for (long q = lo[o1]; q < hi[o1]; ++q) {
      ia[o1] = q;
      ib[o1] = periodic ? wrap(q + shift[o1], n[o1]) : q + shift[o1];
      long k = lo[last];
      while (k < hi[last]) {
        long bk = k + shift[last];
        long run = hi[last] - k;
        if (periodic) {
          bk = wrap(bk, n[last]);
          run = std::min(run, n[last] - bk);
        }
        ia[last] = k;
        ib[last] = bk;
        row(g.index(static_cast<std::size_t>(ia[0]), static_cast<std::size_t>(ia[1]),
                    static_cast<std::size_t>(ia[2])),
            g.index(static_cast<std::size_t>(ib[0]), static_cast<std::size_t>(ib[1]),
                    static_cast<std::size_t>(ib[2])),
            static_cast<std::size_t>(run));
        k += run;
      }
    }
  }
}

}  // namespace

Box support_box(const Grid& g, std::span<const double> values) {
  Box box;
  for (int a = 0; a < 3; ++a) {
    box.lo[a] = static_cast<long>(g.shape[a]);
    box.hi[a] = 0;
  }
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      for (std::size_t k = 0; k < g.shape[2]; ++k) {
        if (values[g.index(i, j, k)] == 0.0) continue;
        const std::array<long, 3> idx{static_cast<long>(i), static_cast<long>(j),
                                      static_cast<long>(k)};
        for (int a = 0; a < 3; ++a) {
          box.lo[a] = std::min(box.lo[a], idx[a]);
          box.hi[a] = std::max(box.hi[a], idx[a] + 1);
        }
      }
    }
  }
  return box;
}

Lattice make_lattice(const Grid& g, Boundary b, std::span<const double> values) {
  return Lattice{&g, b, values, support_box(g, values)};
}

double shifted_dot_int(const Lattice& a, const Lattice& b, const std::array<long, 3>& shift) {
  if (a.support.empty() || b.support.empty()) return 0.0;
  double acc = 0.0;
  const double* av = a.values.data();
  const double* bv = b.values.data();
  for_each_row(a, b, shift, [&](std::size_t fa, std::size_t fb, std::size_t count) {
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += av[fa + k] * bv[fb + k];
    acc += s;
  });
  return acc;
}

double shifted_dot(const Lattice& a, const Lattice& b, const std::array<double, 3>& v) {
  const Grid& g = *a.grid;
  const Split sp = split_offset(g, v);
  const int d = g.dim;
  double acc = 0.0;
  for (int c = 0; c < (1 << d); ++c) {
    double w = 1.0;
    std::array<long, 3> shift{0, 0, 0};
    for (int ax = 0; ax < d; ++ax) {
      const int bit = (c >> ax) & 1;
      w *= bit ? sp.frac[ax] : 1.0 - sp.frac[ax];
      shift[ax] = sp.base[ax] + bit;
    }
    if (w == 0.0) continue;
    acc += w * shifted_dot_int(a, b, shift);
  }
  return acc;
}

Box shifted_product(const Lattice& a, const Lattice& b, const std::array<double, 3>& v,
                    std::vector<double>& out) {
  const Grid& g = *a.grid;
  out.assign(g.size(), 0.0);
  if (a.support.empty() || b.support.empty()) return Box{};
  const Split sp = split_offset(g, v);
  const int d = g.dim;
  const double* av = a.values.data();
  const double* bv = b.values.data();
  for (int c = 0; c < (1 << d); ++c) {
    double w = 1.0;
    std::array<long, 3> shift{0, 0, 0};
    for (int ax = 0; ax < d; ++ax) {
      const int bit = (c >> ax) & 1;
      w *= bit ? sp.frac[ax] : 1.0 - sp.frac[ax];
      shift[ax] = sp.base[ax] + bit;
    }
    if (w == 0.0) continue;
    for_each_row(a, b, shift, [&](std::size_t fa, std::size_t fb, std::size_t count) {
      for (std::size_t k = 0; k < count; ++k) out[fa + k] += w * av[fa + k] * bv[fb + k];
    });
  }
  return support_box(g, out);
}

}  // namespace configdensity::detail
