// Published values of theta(n) = number of 3-free permutations of [n],
// for 1 <= n <= 90 (OEIS A003407).  Includes the corrected values
// theta(15) = 74904 and theta(17) = 368016.
#pragma once

#include <array>
#include <stdexcept>
#include <string_view>

#include "threefree/bigcount.hpp"

namespace threefree {

inline constexpr int kTableMaxN = 90;

// Decimal strings; index i holds theta(i + 1).
inline constexpr std::array<std::string_view, kTableMaxN> kThetaTableDecimal = {
    "1",  // n = 1
    "2",  // n = 2
    "4",  // n = 3
    "10",  // n = 4
    "20",  // n = 5
    "48",  // n = 6
    "104",  // n = 7
    "282",  // n = 8
    "496",  // n = 9
    "1066",  // n = 10
    "2460",  // n = 11
    "6128",  // n = 12
    "12840",  // n = 13
    "29380",  // n = 14
    "74904",  // n = 15
    "212728",  // n = 16
    "368016",  // n = 17
    "659296",  // n = 18
    "1371056",  // n = 19
    "2937136",  // n = 20
    "6637232",  // n = 21
    "15616616",  // n = 22
    "38431556",  // n = 23
    "96547832",  // n = 24
    "198410168",  // n = 25
    "419141312",  // n = 26
    "941812088",  // n = 27
    "2181990978",  // n = 28
    "5624657008",  // n = 29
    "14765405996",  // n = 30
    "41918682488",  // n = 31
    "121728075232",  // n = 32
    "207996053184",  // n = 33
    "360257593216",  // n = 34
    "639536491376",  // n = 35
    "1144978334240",  // n = 36
    "2362611440576",  // n = 37
    "4911144118024",  // n = 38
    "10417809568016",  // n = 39
    "22388184630824",  // n = 40
    "50301508651032",  // n = 41
    "113605533519568",  // n = 42
    "265157938869936",  // n = 43
    "622473467900178",  // n = 44
    "1527398824248200",  // n = 45
    "3784420902143392",  // n = 46
    "9503564310606436",  // n = 47
    "23991783779046768",  // n = 48
    "48820872045382552",  // n = 49
    "99986771685259808",  // n = 50
    "209179575852808848",  // n = 51
    "441563057878399888",  // n = 52
    "992063519708141728",  // n = 53
    "2241540566114243168",  // n = 54
    "5185168615770591200",  // n = 55
    "12057653703359308256",  // n = 56
    "31151270610676979624",  // n = 57
    "81046346414827952010",  // n = 58
    "213208971281274232760",  // n = 59
    "563767895033816986864",  // n = 60
    "1612719155955443585092",  // n = 61
    "4640218386156695178110",  // n = 62
    "13557444070821420327240",  // n = 63
    "39911512393313043466768",  // n = 64
    "67867319248960144994224",  // n = 65
    "115643050433241064474672",  // n = 66
    "199272038058617170554928",  // n = 67
    "344053071167567188894208",  // n = 68
    "608578303898604406167840",  // n = 69
    "1080229099508551381463536",  // n = 70
    "1929269192569465070403584",  // n = 71
    "3452997322628833453585008",  // n = 72
    "7096327095079914521075040",  // n = 73
    "14611112240136930804928288",  // n = 74
    "30235147387260979648843264",  // n = 75
    "62757445134327428602306464",  // n = 76
    "132956581436718531491070160",  // n = 77
    "282272593229156186280461264",  // n = 78
    "605672649054377049472147568",  // n = 79
    "1302375489530691442230524528",  // n = 80
    "2914298247043287576460093712",  // n = 81
    "6537258415569149903366841040",  // n = 82
    "14713284774210886488265138336",  // n = 83
    "33155372641605493828236640928",  // n = 84
    "77219028670778815210019118736",  // n = 85
    "180104653062631494787580542664",  // n = 86
    "421733920870430143234318231648",  // n = 87
    "990082990967384066255452324186",  // n = 88
    "2428249522507620383597702223224",  // n = 89
    "5963505178650560845887322154368",  // n = 90
};

// theta(n) from the published table.  Throws std::out_of_range unless
// 1 <= n <= 90.
inline const BigCount& ground_truth(int n) {
  if (n < 1 || n > kTableMaxN) {
    throw std::out_of_range("ground_truth: n must be in [1, 90]");
  }
  static const std::array<BigCount, kTableMaxN> parsed = [] {
    std::array<BigCount, kTableMaxN> t;
    for (int i = 0; i < kTableMaxN; ++i) {
      t[static_cast<std::size_t>(i)] =
          BigCount::from_decimal(kThetaTableDecimal[static_cast<std::size_t>(i)]);
    }
    return t;
  }();
  return parsed[static_cast<std::size_t>(n - 1)];
}

}  // namespace threefree
