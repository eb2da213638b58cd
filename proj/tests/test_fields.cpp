#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "nfv/errors.hpp"
#include "nfv/fields.hpp"
#include "nfv/numerics.hpp"
#include "support.hpp"

using namespace nfv;
using nfv::test::C;
using nfv::test::rel_err;
using nfv::test::abs_err;

namespace {
const PrecisionContext ctx256{};
}

TEST_CASE("fields: construction from discriminants") {
  auto q = field_from_discriminant(1);
  CHECK(q.degree == 1);
  CHECK(q.r1 == 1);
  CHECK(q.r2 == 0);
  CHECK(q.abs_discriminant == 1);
  CHECK(rel_err(Complex(q.residue_H(ctx256)), C(1.0)) == 0.0);

  auto gauss = field_from_discriminant(-4);
  CHECK(gauss.degree == 2);
  CHECK(gauss.r1 == 0);
  CHECK(gauss.r2 == 1);
  CHECK(gauss.abs_discriminant == 4);
  Complex quarter_pi(ldexp(const_pi(), -2));
  CHECK(rel_err(Complex(gauss.residue_H(ctx256)), quarter_pi) < 1e-70);

  auto golden = field_from_discriminant(5);
  CHECK(golden.r1 == 2);
  CHECK(golden.r2 == 0);
  CHECK(rel_err(Complex(golden.residue_H(ctx256)),
                C("0.430408940964004038889433232950605425424570682540289654757006103992561215461131961361490265")) < 1e-70);
  CHECK(rel_err(Complex(field_from_discriminant(-3).residue_H(ctx256)),
                C("0.604599788078072616864692752547385244094688749364246858523294978462707727042117961228041663")) < 1e-70);
  CHECK(rel_err(Complex(field_from_discriminant(8).residue_H(ctx256)),
                C("0.623225240140230513394020080250568002650695312346567252898714776096170004547014180467669073")) < 1e-70);

  for (long bad : {0L, 2L, 3L, -1L, 20L, -8L * 4, 9L, -16L})
    CHECK_THROWS_AS((void)field_from_discriminant(bad), Error);
  for (long good : {-3L, -4L, 5L, 8L, -7L, -8L, 12L / 3 * 2 + 4, 13L, -20L, 24L})
    CHECK(is_fundamental_discriminant(good));
}

TEST_CASE("fields: kronecker symbol") {
  CHECK(kronecker_symbol(-4, 1) == 1);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(-4, 2) == 0);
  CHECK(kronecker_symbol(5, 19) == 1);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(8, 7) == 1);
  CHECK(kronecker_symbol(-3, 2) == -1);
  // Complete multiplicativity and agreement with squares mod p for odd primes p not dividing delta.
  for (long delta : {-4L, 5L, -3L, 8L, -7L, 13L}) {
    for (long m = 1; m <= 40; ++m)
      for (long n = 1; n <= 40; ++n)
        CHECK(kronecker_symbol(delta, m * n) == kronecker_symbol(delta, m) * kronecker_symbol(delta, n));
    for (long p : {3L, 7L, 11L, 19L, 23L}) {
      if (std::labs(delta) % p == 0) continue;
      bool square = false;
      for (long x = 1; x < p; ++x) square |= (x * x - delta) % p == 0;
      CHECK(kronecker_symbol(delta, p) == (square ? 1 : -1));
    }
  }
}

TEST_CASE("fields: ideal counts") {
  auto gauss = field_from_discriminant(-4);
  CHECK(ideal_count_vk(gauss, 1) == 1);
  CHECK(ideal_count_vk(gauss, 5) == 2);
  CHECK(ideal_count_vk(gauss, 3) == 0);
  // Lattice oracle: v(m) = #{(x, y) : x^2 + y^2 = m} / 4.
  for (long m = 1; m <= 300; ++m) {
    long reps = 0;
    for (long x = -20; x <= 20; ++x)
      for (long y = -20; y <= 20; ++y) reps += x * x + y * y == m;
    CHECK(ideal_count_vk(gauss, m) * 4 == reps);
  }
  for (long delta : {1L, -4L, 5L, -3L, 8L}) {
    auto f = field_from_discriminant(delta);
    auto table = vk_table(f, 200);
    for (long m = 1; m <= 200; ++m) CHECK(table.at(m) == ideal_count_vk(f, m));
    for (long m = 1; m <= 200; ++m)
      for (long n = 1; m * n <= 200 * 200 && n <= 200; ++n)
        if (std::gcd(m, n) == 1 && m * n <= 200) CHECK(table.at(m * n) == table.at(m) * table.at(n));
  }
}

TEST_CASE("fields: divisor sums") {
  auto q = field_from_discriminant(1);
  auto gauss = field_from_discriminant(-4);
  CHECK(rel_err(divisor_sigma(q, C(1.0), 6, ctx256), C(12.0)) == 0.0);
  CHECK(rel_err(divisor_sigma(gauss, C(0.0), 5, ctx256), C(3.0)) == 0.0);
  CHECK(rel_err(divisor_sigma(gauss, C(0.3, 0.2), 1, ctx256), C(1.0)) == 0.0);
  WorkingPrecision wp(ctx256.work_bits());
  auto range = divisor_sigma_range(gauss, C("0.25"), 100);
  for (long n = 1; n <= 100; ++n) CHECK(rel_err(range[static_cast<std::size_t>(n)], divisor_sigma(gauss, C("0.25"), n, ctx256)) < 1e-70);
}

TEST_CASE("fields: Dirichlet L and Dedekind zeta") {
  CHECK(rel_err(dirichlet_L(-4, C(1.0), ctx256), Complex(ldexp(const_pi(), -2))) < 1e-70);
  CHECK(rel_err(dirichlet_L(-4, C(2.0), ctx256),
                C("0.915965594177219015054603514932384110774149374281672134266498119621763019776254769479356513")) < 1e-70);
  CHECK(abs_err(dirichlet_L(5, C(0.0), ctx256), C(0.0)) < 1e-70);
  CHECK(rel_err(dirichlet_L(-4, C(0.0), ctx256), C(0.5)) < 1e-70);
  CHECK(rel_err(dirichlet_L(-4, C("0.3", "0.7"), ctx256),
                C("0.661362952857391042250437687901894107106179101727189232612312784808670568682977760530379511",
                  "0.222133180291105622035571738820766063252390304666839907062791597250386925897889440345734055")) < 1e-70);
  CHECK(rel_err(dirichlet_L(5, C("-1.5"), ctx256),
                C("-0.376545743891260545497539975756974272113807706618201182141807982024507181777726451341810747")) < 1e-70);

  auto q = field_from_discriminant(1);
  auto gauss = field_from_discriminant(-4);
  Complex pi2_6(const_pi() * const_pi() / Real(6L));
  CHECK(rel_err(dedekind_zeta(q, C(2.0), ctx256), pi2_6) < 1e-70);
  CHECK(rel_err(dedekind_zeta(gauss, C(2.0), ctx256),
                C("1.50670300992298503088656504818207139598544770181343103099474559972921630094535626046912367")) < 1e-70);
  CHECK(rel_err(dedekind_zeta(field_from_discriminant(5), C(3.0), ctx256),
                C("1.02754801174167044812148307053052055822268998853305977918450077851193710888561769392617277")) < 1e-70);
  CHECK_THROWS_AS((void)dedekind_zeta(gauss, C(1.0), ctx256), Error);

  // Truncated Dirichlet series at s = 3, M = 10^4 with the H M^{-2}/2 tail estimate.
  WorkingPrecision wp(ctx256.work_bits());
  auto table = vk_table(gauss, 10000);
  Complex partial;
  for (long m = 1; m <= 10000; ++m) partial += Complex(Real(table.at(m)) / pow(Real(m), 3));
  Complex tail(gauss.residue_H(ctx256) / Real(2L * 10000L * 10000L));
  CHECK(abs_err(dedekind_zeta(gauss, C(3.0), ctx256), partial + tail) < 1e-10);
}

TEST_CASE("fields: functional equation and residue") {
  for (long delta : {-4L, 5L, -3L, 8L}) {
    auto f = field_from_discriminant(delta);
    for (const Complex& s : {C("0.3"), C("0.3", "0.7"), C("-0.2")}) {
      WorkingPrecision wp(ctx256.work_bits());
      const Complex one(1L);
      Complex lhs = dedekind_zeta(f, s, ctx256);
      Complex d = Complex(Real(static_cast<long>(f.degree)));
      Complex rhs = pow(Real(f.abs_discriminant), Complex(Real::rational(1, 2)) - s) *
                    pow(Real(2L), d * s - Complex(Real(static_cast<long>(f.r2)))) *
                    pow(const_pi(), d * s - Complex(Real(static_cast<long>(f.r1 + f.r2)))) *
                    pow(gamma(one - s, ctx256), static_cast<long>(f.r1 + f.r2)) *
                    pow(gamma(s, ctx256), -static_cast<long>(f.r2)) *
                    pow(sin(s * Complex(ldexp(const_pi(), -1))), static_cast<long>(f.r1)) *
                    dedekind_zeta(f, one - s, ctx256);
      CHECK(rel_err(lhs, rhs) < 1e-20);
    }
    // (s - 1) zeta_K(s) -> H with first-order error.
    const Real h = f.residue_H(ctx256);
    double errs[3];
    int i = 0;
    for (int k : {4, 6, 8}) {
      WorkingPrecision wp(ctx256.work_bits());
      Real step = pow(Real(10L), static_cast<long>(-k));
      Complex v = dedekind_zeta(f, Complex(Real(1L) + step), ctx256) * Complex(step);
      errs[i++] = abs_err(v, Complex(h));
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(100.0).epsilon(0.05));
    CHECK(errs[1] / errs[2] == doctest::Approx(100.0).epsilon(0.05));
  }
}

TEST_CASE("fields: table ingestion and cache") {
  auto gauss = field_from_discriminant(-4);
  auto table = vk_table(gauss, 500);
  std::string csv = format_vk_csv(table);
  FieldMetadata meta{2, 0, 1, -4, "0.78539816339744830961566084581987572104929234984377645524373614807695410157"};
  auto tf = field_from_table(parse_vk_csv(csv), meta);
  CHECK(tf.source == CoefficientSource::Table);
  for (long m = 1; m <= 500; ++m) CHECK(ideal_count_vk(tf, m) == ideal_count_vk(gauss, m));
  CHECK(rel_err(divisor_sigma(tf, C("0.5"), 360, ctx256), divisor_sigma(gauss, C("0.5"), 360, ctx256)) < 1e-70);
  CHECK(rel_err(Complex(tf.residue_H(ctx256)), Complex(gauss.residue_H(ctx256))) < 1e-70);
  CHECK_THROWS_AS((void)ideal_count_vk(tf, 501), Error);
  try {
    (void)ideal_count_vk(tf, 501);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfTableRange);
  }
  CHECK_THROWS_AS((void)dedekind_zeta(tf, C(0.5), ctx256), Error);

  auto bad = parse_vk_csv(csv);
  bad.counts[1] = 2;
  try {
    validate_vk_table(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultiplicativityViolation);
  }
  auto broken = parse_vk_csv(csv);
  broken.counts[6] += 1;
  CHECK_THROWS_AS(validate_vk_table(broken), Error);
  CHECK_THROWS_AS((void)parse_vk_csv("norm,count\n1,1\n3,0\n"), Error);
  CHECK_THROWS_AS((void)parse_vk_csv("m,c\n1,1\n"), Error);
  CHECK_THROWS_AS((void)parse_field_metadata("{\"degree\": 2}"), Error);
  CHECK_THROWS_AS((void)field_from_table(parse_vk_csv(csv), FieldMetadata{3, 0, 1, -4, "1"}), Error);

  auto dir = std::filesystem::temp_directory_path() / "nfv_cache_test";
  std::filesystem::remove_all(dir);
  ::setenv("VORONOI_NF_CACHE", dir.c_str(), 1);
  CHECK(cache_directory() == dir);
  auto first = cached_vk_table(-4, 120000);
  CHECK(std::filesystem::exists(dir / "vk_-4_120000.csv"));
  auto second = cached_vk_table(-4, 120000);
  CHECK(first.counts == second.counts);
  CHECK(first.counts == vk_table(gauss, 120000).counts);
  ::unsetenv("VORONOI_NF_CACHE");
  std::filesystem::remove_all(dir);
}
