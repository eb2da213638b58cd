#include <random>
#include <vector>

#include "doctest.h"
#include "nfv/numerics.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace nfv;
using nfv::test::C;
using nfv::test::rel_err;

namespace {
const PrecisionContext ctx256 = PrecisionContext{};
}

TEST_CASE("gamma: special values") {
  CHECK(rel_err(gamma(C(0.5), ctx256), C("1.772453850905516027298167483341145182797549456122387128213807789852911284591025748")) < 1e-70);
  CHECK(gamma(C(5.0), ctx256) == C(24.0));
  CHECK(rel_err(gamma(C("0.3", "0.4"), ctx256),
                C("0.911561527804585930928041127797597264201957584048141638232812",
                  "-1.36719335758541861880712538133766098554574840970713468618492")) < 1e-55);
  CHECK(rel_err(gamma(C("-2.5", "3"), ctx256),
                C("0.000479788410841897012166885315043289809915784496969050868496436",
                  "0.000298855711144858868164805841852040850599090722425103257137752")) < 1e-55);
  CHECK(rel_err(gamma(C("20.25", "-7"), ctx256),
                C("-43106676715081880.9894961932248245321925201370313871127012456",
                  "-62507431329340081.4082917926568457575502300370153402037496234")) < 1e-55);
  CHECK(rel_err(gamma(C("0.001", "50"), ctx256),
                C("2.64074873858461184629705832760186169637805594889316760985564e-35",
                  "8.23840735134065799668410937127152460948648889756306271047588e-36")) < 1e-55);
}

TEST_CASE("gamma: reflection example and poles") {
  Complex z = C("0.3", "0.4");
  Complex lhs = gamma(z, ctx256) * gamma(C(1.0) - z, ctx256);
  Complex rhs = Complex(const_pi()) / sin_pi(z);
  CHECK(rel_err(lhs, rhs) < 1e-70);
  CHECK_THROWS_AS((void)gamma(C(-3.0), ctx256), Error);
  CHECK_THROWS_AS((void)gamma(C(0.0), ctx256), Error);
  CHECK(rgamma(C(-3.0), ctx256).is_zero());
}

TEST_CASE("polygamma against oracle values") {
  CHECK(rel_err(polygamma(0, C("0.3", "0.4"), ctx256),
                C("-1.2800917888512821807252056916204263468069406034637700027854",
                  "2.03010577809617958717782574128027449988660392941250549551669")) < 1e-55);
  CHECK(rel_err(polygamma(1, C("0.3", "0.4"), ctx256),
                C("-0.153485469305164852625317990416200418820228848362185530183653",
                  "-4.25439201146385386750600360473035821715811964732157583966834")) < 1e-55);
  CHECK(rel_err(polygamma(3, C("-1.5", "0.25"), ctx256),
                C("-32.428104027901839645424230743764857587746933868622837907771",
                  "-0.0750955406524379773249745939043695075825879960490111987682207")) < 1e-55);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(C(0.7), 0) == C(1.0));
  CHECK(pochhammer(C(1.0), 5) == C(120.0));
  CHECK(pochhammer(C(0.5), 3) == C(1.875));
}

TEST_CASE("hypergeometric series") {
  std::vector<Complex> none;
  std::vector<Complex> one{C(1.0)};
  CHECK(hypergeometric_pfq(none, one, C(0.0), ctx256) == C(1.0));
  CHECK(rel_err(hypergeometric_pfq(none, one, C(-1.0), ctx256),
                C("0.22389077914123566805182745464994862582515448221860760312835")) < 1e-55);
  CHECK(rel_err(hypergeometric_pfq(none, one, C(-100.0), ctx256),
                C("0.167024664340583154727320544701384038875333378408533084201462")) < 1e-55);
  std::vector<Complex> b3{C(1.25), C(0.75), C(0.5)};
  CHECK(rel_err(hypergeometric_pfq(none, b3, C(0.0625), ctx256),
                C("1.13403945866817511576605846217825163689714924594225649742211")) < 1e-55);
  std::vector<Complex> a1{C("0.3")};
  std::vector<Complex> b2{C("1.7"), C("0.2", "1")};
  CHECK(rel_err(hypergeometric_pfq(a1, b2, C(-30.0, 4.0), ctx256),
                C("0.37982464392388556109469680326806557387984120845208850975513",
                  "0.214442371421260863680494121947900545824762514434847099143541")) < 1e-55);
  // split identity at nu = 0.25, w = 1
  Complex split = hypergeometric_pfq(none, b3, C(1.0 / 16), ctx256);
  std::vector<Complex> b15{C(1.5)};
  Complex halves = (hypergeometric_pfq(none, b15, C(1.0), ctx256) + hypergeometric_pfq(none, b15, C(-1.0), ctx256));
  halves.mul_2si(-1);
  CHECK(rel_err(split, halves) < 1e-70);
  std::vector<Complex> two{C(1.0), C(2.0)};
  CHECK_THROWS_AS((void)hypergeometric_pfq(two, one, C(0.5), ctx256), Error);
  std::vector<Complex> bad{C(-2.0)};
  CHECK_THROWS_AS((void)hypergeometric_pfq(none, bad, C(0.5), ctx256), Error);
}

TEST_CASE("bessel: series region") {
  CHECK(bessel(BesselKind::J, C(0.0), C(0.0), ctx256) == C(1.0));
  CHECK(rel_err(bessel(BesselKind::J, C(0.0), C(2.0), ctx256),
                C("0.22389077914123566805182745464994862582515448221860760312835")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::Y, C(0.0), C(2.0), ctx256),
                C("0.510375672649745119596606592727157873268139227085846135571839")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::K, C(0.0), C(2.0), ctx256),
                C("0.11389387274953343565271957493248183299832662438880888289253")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::Y, C(1.0), C(3.5), ctx256),
                C("0.410188417887511882872119683407401068916219812002539158641357")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::K, C(2.0), C(0.7), ctx256),
                C("3.6613299608091533497414080286144977902370643946584719346077140097")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::J, C("0.5", "1"), C("3", "-2"), ctx256),
                C("0.292944700381048022711926358594998757277361516536797435366544",
                  "6.97485607425020737508820289795871663955407033681337245242701")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::J, C("0.3"), C(50.0), ctx256),
                C("0.00531003910784773267750407989137226306778069217320496133726393")) < 1e-50);
  CHECK(rel_err(bessel(BesselKind::Y, C("0.3"), C(50.0), ctx256),
                C("-0.11271109864982047561632462449032410579833232555894626076703")) < 1e-55);
  Complex third = C(1.0) / C(3.0);
  CHECK(rel_err(bessel(BesselKind::K, third, C(5.0, 5.0), ctx256),
                C("0.00196839991980217680149366287456278617586335176331646197743101",
                  "0.00246428196779868788437389821436272638382167473407235497537824")) < 1e-55);
  // K_{1/2}(1) = sqrt(pi/2) e^{-1}
  CHECK(rel_err(bessel(BesselKind::K, C(0.5), C(1.0), ctx256),
                C("0.46106850444789455843957587387569458968889718903714185045139531137")) < 1e-55);
  // J_{-1/2}(2) = cos(pi/2) J_{1/2}(2) - sin(pi/2) Y_{1/2}(2)
  CHECK(rel_err(bessel(BesselKind::J, C(-0.5), C(2.0), ctx256), -bessel(BesselKind::Y, C(0.5), C(2.0), ctx256)) <
        1e-70);
  CHECK_THROWS_AS((void)bessel(BesselKind::K, C(0.0), C(0.0), ctx256), Error);
}

TEST_CASE("bessel: asymptotic region") {
  CHECK(rel_err(bessel(BesselKind::K, C("0.3"), C(200.0), ctx256),
                C("1.22595710330285122510259225358376348796018885043866897679962e-88")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::I, C("0.3"), C(200.0), ctx256),
                C("2.03922714217916934418576735899404113430563838045842356849127e+85")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::Y, C(2.0), C(150.0), ctx256),
                C("0.0651496475936981657961038004541591912424748097334319589910188")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::K, C(0.0), C(150.0), ctx256),
                C("7.33637140610764569767513206088040769304753800955946568954607e-67")) < 1e-55);
  CHECK(rel_err(bessel(BesselKind::J, C(0.0), C(200.0), ctx256),
                C("-0.0154374399305650915919228472313441486003687685931235689003773")) < 1e-55);
}

TEST_CASE("zeta functions") {
  CHECK(rel_err(riemann_zeta(C(2.0), ctx256),
                C("1.644934066848226436472415166646025189218949901206798437735558229370007470403200875")) < 1e-70);
  CHECK(rel_err(riemann_zeta(C(0.0), ctx256), C(-0.5)) < 1e-70);
  CHECK(rel_err(riemann_zeta(C(3.0), ctx256),
                C("1.20205690315959428539973816151144999076498629234049888179227")) < 1e-55);
  CHECK(rel_err(riemann_zeta(C(-0.5), ctx256),
                C("-0.207886224977354566017306725397049302226268531287672537610114")) < 1e-55);
  CHECK(rel_err(hurwitz_zeta(C("0.5", "14"), Real(std::string_view("0.3")), ctx256),
                C("-1.38455708457282426773972129885342136691701261650928925215612",
                  "-0.491037099549331786910925964117112648388476440297348208236893")) < 1e-55);
  CHECK(rel_err(hurwitz_zeta(C("-2.5"), Real(std::string_view("0.75")), ctx256),
                C("0.00679865558288646047378369823364062795886756486124227700341087")) < 1e-55);
  CHECK_THROWS_AS((void)riemann_zeta(C(1.0), ctx256), Error);
}

TEST_CASE("half-line quadrature") {
  PrecisionContext ctx = PrecisionContext::with_precision(128);
  ctx.target_rel_tol = 1e-32;
  auto r1 = integrate_halfline([](const Real& t) { return Complex(exp(-t)); }, ctx);
  CHECK(rel_err(r1.value, C(1.0)) < 1e-30);
  auto r2 = integrate_halfline([](const Real& t) { return Complex(t * exp(-(t * t))); }, ctx);
  CHECK(rel_err(r2.value, C(0.5)) < 1e-30);
  auto r3 = integrate_halfline(
      [&](const Real& t) { return bessel(BesselKind::K, C(0.0), Complex(t), ctx); }, ctx);
  Complex half_pi(const_pi());
  half_pi.mul_2si(-1);
  CHECK(rel_err(r3.value, half_pi) < 1e-30);
  // t^{-1/2} e^{-t} -> sqrt(pi)
  auto r4 = integrate_halfline([](const Real& t) { return Complex(exp(-t) / sqrt(t)); }, ctx);
  CHECK(rel_err(r4.value, Complex(sqrt(const_pi()))) < 1e-30);
}

TEST_CASE("vertical-line quadrature") {
  PrecisionContext ctx = PrecisionContext::with_precision(128);
  ctx.target_rel_tol = 1e-28;
  // (1/2 pi i) int Gamma(s) x^{-s} ds at c = 2, x = 1 -> e^{-1}
  auto r = integrate_vertical_line([&](const Complex& s) { return gamma(s, ctx); }, Real(2L), ctx,
                                   {.strip_half_width = 2.0, .conjugate_symmetric = true});
  Complex two_pi_i(Real(), ldexp(const_pi(), 1));
  CHECK(rel_err(r.value / two_pi_i, Complex(exp(Real(-1L)))) < 1e-25);
  // (1/2 pi i) int Gamma(-s) z^s ds at c = -1/2, z = 1: residues of Gamma(-s) give e^{-1}
  auto r2 = integrate_vertical_line([&](const Complex& s) { return gamma(-s, ctx); }, Real(-0.5), ctx,
                                    {.strip_half_width = 0.5, .conjugate_symmetric = true});
  CHECK(rel_err(r2.value / two_pi_i, Complex(exp(Real(-1L)))) < 1e-25);
  auto zero = integrate_vertical_line([](const Complex&) { return Complex(); }, Real(0.5), ctx);
  CHECK(zero.value.is_zero());
  CHECK_THROWS_AS((void)integrate_vertical_line(
                      [](const Complex& s) { return Complex(1L) / (Complex(1L) + s * s); }, Real(0.5), ctx),
                  Error);
}

TEST_CASE("determinism of repeated evaluation") {
  Complex a = gamma(C("0.37", "2.1"), ctx256);
  Complex b = gamma(C("0.37", "2.1"), ctx256);
  CHECK(a == b);
}

TEST_CASE("identity property sets at 10 ulps") {
  const auto serial = nfv::props::all_properties(256, 1);
  const auto parallel = nfv::props::all_properties(256, 8);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CAPTURE(serial[i].name);
    CHECK(serial[i].points == 100);
    CHECK(serial[i].worst_ulps <= 10.0);
    CHECK(serial[i].values == parallel[i].values);
  }
}
