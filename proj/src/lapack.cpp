#include "lapack.hpp"

#include "zgv/errors.hpp"

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <string>

namespace zgv::lapack {

namespace {

lapack_complex_double* ptr(ComplexMatrix& m) { return m.data(); }
lapack_complex_double* ptr(ComplexVector& v) { return v.data(); }

void check(lapack_int info, const char* routine) {
  if (info != 0) {
    throw Error(ErrorCode::SingularPencil,
                std::string(routine) + " failed with info = " + std::to_string(info));
  }
}

lapack_int ld(Index n) { return static_cast<lapack_int>(std::max<Index>(1, n)); }

}  // namespace

GeneralizedEigen ggev(const ComplexMatrix& a, const ComplexMatrix& b, bool vectors) {
  const Index n = a.rows();
  ComplexMatrix aw = a;
  ComplexMatrix bw = b;
  GeneralizedEigen out;
  out.alpha.resize(n);
  out.beta.resize(n);
  const char job = vectors ? 'V' : 'N';
  out.left.resize(vectors ? n : 1, vectors ? n : 1);
  out.right.resize(vectors ? n : 1, vectors ? n : 1);
  const lapack_int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, job, job, static_cast<lapack_int>(n), ptr(aw), ld(n), ptr(bw), ld(n),
      ptr(out.alpha), ptr(out.beta), ptr(out.left), ld(out.left.rows()), ptr(out.right),
      ld(out.right.rows()));
  check(info, "zggev");
  return out;
}

GeneralizedSchur gges(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index n = a.rows();
  GeneralizedSchur out;
  out.s = a;
  out.t = b;
  out.q.resize(n, n);
  out.z.resize(n, n);
  out.alpha.resize(n);
  out.beta.resize(n);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_zgges(
      LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, static_cast<lapack_int>(n), ptr(out.s), ld(n),
      ptr(out.t), ld(n), &sdim, ptr(out.alpha), ptr(out.beta), ptr(out.q), ld(n), ptr(out.z),
      ld(n));
  check(info, "zgges");
  return out;
}

void reorder(GeneralizedSchur& schur, const std::vector<bool>& select) {
  const Index n = schur.s.rows();
  std::vector<lapack_logical> sel(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) sel[static_cast<std::size_t>(i)] = select[static_cast<std::size_t>(i)] ? 1 : 0;
  lapack_int m = 0;
  double pl = 0.0;
  double pr = 0.0;
  double dif[2] = {0.0, 0.0};
  // Called through the Fortran interface: the LAPACKE wrapper mishandles the
  // workspace query for ijob = 0 on some builds.
  const lapack_int ijob = 0;
  const lapack_logical want = 1;
  const lapack_int nn = static_cast<lapack_int>(n);
  const lapack_int ldn = ld(n);
  std::vector<lapack_complex_double> work(static_cast<std::size_t>(std::max<Index>(1, 2 * n * n)));
  const lapack_int lwork = static_cast<lapack_int>(work.size());
  lapack_int iwork[1] = {0};
  const lapack_int liwork = 1;
  lapack_int info = 0;
  LAPACK_ztgsen(&ijob, &want, &want, sel.data(), &nn, ptr(schur.s), &ldn, ptr(schur.t), &ldn,
                ptr(schur.alpha), ptr(schur.beta), ptr(schur.q), &ldn, ptr(schur.z), &ldn, &m, &pl,
                &pr, dif, work.data(), &lwork, iwork, &liwork, &info);
  check(info, "ztgsen");
}

void schur_eigenvectors(const GeneralizedSchur& schur, ComplexMatrix& left, ComplexMatrix& right) {
  const Index n = schur.s.rows();
  ComplexMatrix s = schur.s;
  ComplexMatrix t = schur.t;
  left = schur.q;
  right = schur.z;
  lapack_int m = 0;
  const lapack_int info = LAPACKE_ztgevc(
      LAPACK_COL_MAJOR, 'B', 'B', nullptr, static_cast<lapack_int>(n), ptr(s), ld(n), ptr(t), ld(n),
      ptr(left), ld(n), ptr(right), ld(n), static_cast<lapack_int>(n), &m);
  check(info, "ztgevc");
}

}  // namespace zgv::lapack
