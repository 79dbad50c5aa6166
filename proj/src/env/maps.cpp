#include "ssd/env/config.hpp"

namespace ssd {

namespace {

constexpr std::string_view k_coins =
    "WWWWWWWWWWWWWW\n"
    "W............W\n"
    "W............W\n"
    "W..P......P..W\n"
    "W............W\n"
    "W............W\n"
    "W............W\n"
    "W............W\n"
    "W............W\n"
    "W............W\n"
    "W..P......P..W\n"
    "W............W\n"
    "W............W\n"
    "WWWWWWWWWWWWWW\n";

constexpr std::string_view k_harvest_open =
    "WWWWWWWWWWWWWWWWWWWWWWWWW\n"
    "W...........P...........W\n"
    "W...A.......A.......A...W\n"
    "W..AAA.....AAA.....AAA..W\n"
    "W.AAAAA...AAAAA...AAAAA.W\n"
    "W..AAA.....AAA.....AAA..W\n"
    "W...A.......A.......A...W\n"
    "W.......................W\n"
    "W.P...P...P...P...P...P.W\n"
    "W.......................W\n"
    "W...A.......A.......A...W\n"
    "W..AAA.....AAA.....AAA..W\n"
    "W.AAAAA...AAAAA...AAAAA.W\n"
    "W..AAA.....AAA.....AAA..W\n"
    "W...A.......A.......A...W\n"
    "W.......................W\n"
    "W...P.......P.......P...W\n"
    "WWWWWWWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_harvest_closed =
    "WWWWWWWWWWWWWWWWWWWWWWWWW\n"
    "W...........W...........W\n"
    "W..A....A...W..A....A...W\n"
    "W.AAA..AAA..W.AAA..AAA..W\n"
    "W..A....A...W..A....A...W\n"
    "W...........W...........W\n"
    "W...A....A..W...A....A..W\n"
    "W..AAA..AAA.W..AAA..AAA.W\n"
    "W...A....A..W...A....A..W\n"
    "W...........W...........W\n"
    "WWWWWW.WWWWWWWWWWW.WWWWWW\n"
    "W.......................W\n"
    "W.P..P..P..P..P..P..P...W\n"
    "W.......................W\n"
    "W...P.....P.....P....P..W\n"
    "WWWWWWWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_harvest_partnership =
    "WWWWWWWWWWWWWWWWWWWWWWWWW\n"
    "W...........W...........W\n"
    "W..A....A...W..A....A...W\n"
    "W.AAA..AAA..W.AAA..AAA..W\n"
    "W..A....A...W..A....A...W\n"
    "W...........W...........W\n"
    "W...A....A..W...A....A..W\n"
    "W..AAA..AAA.W..AAA..AAA.W\n"
    "W...A....A..W...A....A..W\n"
    "W...........W...........W\n"
    "WW.WWWWWWW.WWW.WWWWWWW.WW\n"
    "W.......................W\n"
    "W.P..P..P..P..P..P..P...W\n"
    "W.......................W\n"
    "W...P.....P.....P....P..W\n"
    "WWWWWWWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_clean_up =
    "WWWWWWWWWWWWWWWWWWWW\n"
    "WRRRRRRRRRRRRRRRRRRW\n"
    "WRRRRRRRRRRRRRRRRRRW\n"
    "WRRRRRRRRRRRRRRRRRRW\n"
    "W..................W\n"
    "W..................W\n"
    "W.P..P..P..P..P..P.W\n"
    "W..P.....P.....P...W\n"
    "W..................W\n"
    "W..................W\n"
    "W.A.A.A.A.A.A.A.A.AW\n"
    "WA.A.A.A.A.A.A.A.A.W\n"
    "W.A.A.A.A.A.A.A.A.AW\n"
    "WA.A.A.A.A.A.A.A.A.W\n"
    "W.A.A.A.A.A.A.A.A.AW\n"
    "WA.A.A.A.A.A.A.A.A.W\n"
    "W.A.A.A.A.A.A.A.A.AW\n"
    "WWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_coop_mining =
    "WWWWWWWWWWWWWWWWWWWW\n"
    "W........G...I..G..W\n"
    "W.P......P.......P.W\n"
    "WI....I......I.....W\n"
    "W.....I..........I.W\n"
    "W.I........G..G....W\n"
    "W..........I.......W\n"
    "W..P.....P......P..W\n"
    "WI..........G......W\n"
    "W.......G..........W\n"
    "W..................W\n"
    "W..................W\n"
    "W...I.........I....W\n"
    "W.P..I...P.......P.W\n"
    "W.............G...GW\n"
    "WWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_mushrooms =
    "WWWWWWWWWWWWWWWWWWWW\n"
    "W........g...m..g..W\n"
    "W.P......P..b....P.W\n"
    "Wm.b..m......m.....W\n"
    "Wo.b..mg.........m.W\n"
    "W.m........g..g....W\n"
    "W..........mo......W\n"
    "W..P.....P......PboW\n"
    "Wm...b......m......W\n"
    "Wo......m..........W\n"
    "W......o...g.......W\n"
    "W..........o.......W\n"
    "W...m.........m.b..W\n"
    "W.P..m...P.......P.W\n"
    "W.............g...gW\n"
    "WWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_gift_refinement =
    "WWWWWWWWWWWWWWWWWWWW\n"
    "W........T...T..T..W\n"
    "W.P......P.......P.W\n"
    "WT....T......T.....W\n"
    "W.....T..........T.W\n"
    "W.T........T..T....W\n"
    "W..........T.......W\n"
    "W..P.....P......P..W\n"
    "WT..........T......W\n"
    "W.......T..........W\n"
    "W..................W\n"
    "W..................W\n"
    "W...T.........T....W\n"
    "W.P..T...P.......P.W\n"
    "W.............T...TW\n"
    "WWWWWWWWWWWWWWWWWWWW\n";

constexpr std::string_view k_pd_arena =
    "WWWWWWWWWWWWWWWW\n"
    "W..............W\n"
    "W.P..........P.W\n"
    "W..............W\n"
    "W..............W\n"
    "W...CXCXCXCX...W\n"
    "W..X........X..W\n"
    "W..C...P....C..W\n"
    "W..X....P...X..W\n"
    "W..C........C..W\n"
    "W...CXCXCXCX...W\n"
    "W..............W\n"
    "W..............W\n"
    "W.P..........P.W\n"
    "W..............W\n"
    "WWWWWWWWWWWWWWWW\n";

}  // namespace

std::string_view default_map_text(EnvKind kind) {
  switch (kind) {
    case EnvKind::Coins: return k_coins;
    case EnvKind::HarvestOpen: return k_harvest_open;
    case EnvKind::HarvestClosed: return k_harvest_closed;
    case EnvKind::HarvestPartnership: return k_harvest_partnership;
    case EnvKind::CleanUp: return k_clean_up;
    case EnvKind::CoopMining: return k_coop_mining;
    case EnvKind::Mushrooms: return k_mushrooms;
    case EnvKind::GiftRefinement: return k_gift_refinement;
    case EnvKind::PdArena: return k_pd_arena;
  }
  return {};
}

}  // namespace ssd
