#pragma once

// Stirling-series log-Gamma for the multiprecision tiers. The shift-and-
// expand construction needs only multiplications, one log, and a short
// polynomial, which is an order of magnitude cheaper per call than the
// general-purpose routine the library ships.

#include <string>
#include <vector>

namespace mlfrac::detail {

// B_{2n} / (2n (2n-1)) for n = 1..32, 108 significant digits.
inline const char* const stirling_coeff_strings[32] = {
    "0.0833333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333",
    "-0.00277777777777777777777777777777777777777777777777777777777777777777777777777777777777777777777777777777777778",
    "0.000793650793650793650793650793650793650793650793650793650793650793650793650793650793650793650793650793650793651",
    "-0.000595238095238095238095238095238095238095238095238095238095238095238095238095238095238095238095238095238095238",
    "0.000841750841750841750841750841750841750841750841750841750841750841750841750841750841750841750841750841750841751",
    "-0.00191752691752691752691752691752691752691752691752691752691752691752691752691752691752691752691752691752691753",
    "0.00641025641025641025641025641025641025641025641025641025641025641025641025641025641025641025641025641025641026",
    "-0.0295506535947712418300653594771241830065359477124183006535947712418300653594771241830065359477124183006535948",
    "0.179644372368830573164938490015889396694350254721771749635526725310007043753173784133536455517879666486477632",
    "-1.39243221690590111642743221690590111642743221690590111642743221690590111642743221690590111642743221690590112",
    "13.4028640441683919944789510006901311249137336093857832988267770876466528640441683919944789510006901311249137",
    "-156.848284626002017306365132452088973828104262886871582523756436799915060784626002017306365132452088973828104",
    "2193.10333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333333",
    "-36108.7712537249893571732652192422307364836100468284376330353341847594721157939548744146445295870583226905066",
    "691472.268851313067108395250775673467553334071687798050423189466571001609933756763567664568776915829196140653",
    "-15238221.5394074161922833649588867805186590765338393421884882985452245414294750158127767235926628716002530044",
    "382900751.391414141414141414141414141414141414141414141414141414141414141414141414141414141414141414141414141",
    "-10882266035.7843910890151491655251053747294348798108196604437205940965339461580063083822482318722920226679625",
    "347320283765.002252252252252252252252252252252252252252252252252252252252252252252252252252252252252252252252",
    "-12369602142269.2744542517103492713248810809786419542517103492713248810809786419542517103492713248810809786420",
    "488788064793079.335075815162518022902108470538905673821807036295327357639974121620665660856893334002158246547",
    "-21320333960919373.8969750589821368385574654533198517020559487698011459386585776879002359285473542298618132794",
    "1021775296525700077.56528762805358550039401103230890464933018124507486209613869188337273443656422379826635146",
    "-53575472173300203610.8277091919692044848490405436588164998678140104923584272770755874635724447989779654360380",
    "3061578263704883415043.15105132962275819418676561533704390847247990105132962275819418676561533704390847247990",
    "-189999174263992040502937.142930694290294734245899617708718707608829695400172647675422370205944012825255888519",
    "12763374033828834149234951.3776978259765416336088299014482397468163770712595605015333582033350321996465657505",
    "-925284717612041630723024234.834762277951933124346917450365726227795193312434691745036572622779519331243469175",
    "72188225951856102978360501873.0163792248984042025968876994746753890375656655763703042918029537119635246307860",
    "-6045183405995856967743148238754.54728606614439596719620740630160809601335195362210034744520130245555766981970",
    "542067047157009454519347781482610.001366120218579234972677595628415300546448087431693989071038251366120218579",
    "-51929578153140819467001947643918576.8469970627139744786803610333022097727980080921257391845627139744786803610",
};

// lgamma for positive x in a multiprecision Real: shift x above the Stirling
// threshold by a running product, then evaluate the asymptotic series.
// Thresholds/terms sized for ~50- and ~100-digit targets.
template <class Real>
Real lgamma_stirling_big(Real x, double target_digits) {
    static const std::vector<Real> coeffs = [] {
        std::vector<Real> c;
        c.reserve(32);
        for (const char* s : stirling_coeff_strings) c.emplace_back(s);
        return c;
    }();
    static const Real half_ln_two_pi =
        Real("0.918938533204672741780329736405617639861397473637783412817151540482765695927260397694743298635954197622");

    int nterms;
    double x0;
    if (target_digits <= 52.0) { nterms = 20; x0 = 48.0; }
    else                       { nterms = 32; x0 = 195.0; }

    Real shift_log = 0;
    if (x < x0) {
        Real prod = 1;
        while (x < x0) { prod *= x; x += 1; }
        shift_log = log(prod);
    }
    Real lx = log(x);
    Real sum = (x - Real(0.5)) * lx - x + half_ln_two_pi;
    Real z = Real(1) / (x * x);
    Real acc = coeffs[nterms - 1];
    for (int i = nterms - 2; i >= 0; --i) acc = acc * z + coeffs[i];
    return sum + acc / x - shift_log;
}

} // namespace mlfrac::detail
