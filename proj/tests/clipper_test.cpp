#include "helpers.hpp"
#include "liqsim/clipper.hpp"
#include "liqsim/errors.hpp"

#include <doctest.h>

#include <random>

using namespace liqsim;
using liqsim::testing::rad;
using liqsim::testing::ray;
using liqsim::testing::wad;

namespace {

constexpr AgentId kOwner{1};
constexpr AgentId kKeeper{2};
const char* const kArt = "17142.857142857142857142";

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

IncentiveParams params(const char* chip, const char* tip) { return {ray(chip), rad(tip)}; }

struct World {
  Ledger ledger{ray("1.5")};
  Clipper clipper;
  VaultId vault;

  // Opens a 10 ETH vault at `open_feed` with debt `art`, then drops the feed
  // to `drop_feed` at t = 10.
  World(IncentiveParams inc, const char* art = kArt, const char* open_feed = "3000", const char* drop_feed = "2400")
      : clipper(AuctionParams{}, inc) {
    ledger.poke(wad(open_feed), 0);
    ledger.slip(kOwner, wad("10"));
    vault = ledger.open(kOwner);
    ledger.frob(vault, kOwner, wad("10"), wad(art));
    ledger.poke(wad(drop_feed), 10);
  }
};

}  // namespace

TEST_SUITE("clipper") {
  TEST_CASE("incentive is chip times tab plus tip, exactly") {
    CHECK(incentive(rad("100"), params("0.05", "0")) == rad("5"));
    CHECK(incentive(rad("123456.789"), params("0", "100")) == rad("100"));
    CHECK(incentive(Rad{}, params("0", "100")) == rad("100"));
    CHECK(incentive(rad(kArt), params("0.001", "500")) == rad("517.142857142857142857142"));
  }

  TEST_CASE("incentive parameters are validated") {
    CHECK(code_of([] { params("1", "0").validate(); }) == Errc::ConfigError);
    CHECK(code_of([] { params("-0.1", "0").validate(); }) == Errc::ConfigError);
    CHECK(code_of([] { params("0.1", "-1").validate(); }) == Errc::ConfigError);
    AuctionParams bad;
    bad.step_factor = Ray::one();
    CHECK(code_of([&] { bad.validate(); }) == Errc::ConfigError);
  }

  TEST_CASE("auction price decays geometrically") {
    CHECK(auction_price(ray("3000"), 0, ray("0.945")) == ray("3000"));
    CHECK(auction_price(ray("3000"), 2, ray("0.945")) == ray("2679.075"));
    CHECK(auction_price(ray("3000"), 1, ray("0.945")) == ray("2835"));
  }

  TEST_CASE("needs_redo trips on tail and on cusp") {
    AuctionParams p;
    Auction a;
    a.top = ray("3000");
    a.tic = 100;
    CHECK_FALSE(needs_redo(a, 100, p));
    CHECK_FALSE(needs_redo(a, 114, p));  // 0.945^14 = 0.4529 >= 0.45
    CHECK(needs_redo(a, 115, p));        // 0.945^15 = 0.4280 < 0.45, and 15 > tail

    p.cusp = ray("0.01");
    CHECK_FALSE(needs_redo(a, 114, p));
    CHECK(needs_redo(a, 115, p));  // tail alone

    p.tail = 1000;
    p.cusp = ray("0.9");
    CHECK_FALSE(needs_redo(a, 101, p));  // 0.945
    CHECK(needs_redo(a, 102, p));        // 0.893 < 0.9
  }

  TEST_CASE("bark starts an auction and pays the keeper") {
    World w(params("0.001", "500"));
    BarkResult r = w.clipper.bark(w.ledger, w.vault, kKeeper, 11);
    REQUIRE(r.auction);
    const Auction& a = w.clipper.auction(*r.auction);
    CHECK(a.lot == wad("10"));
    CHECK(a.tab == rad(kArt));
    CHECK(a.top == ray("3000"));
    CHECK(a.tic == 11);
    CHECK(a.usr == kOwner);
    CHECK(r.episode.onset == 10);
    CHECK(r.episode.liquidated == 11);
    CHECK(r.episode.length() == 1);
    CHECK(r.incentive == rad("517.142857142857142857142"));
    CHECK(w.ledger.dai(kKeeper) == r.incentive);
    CHECK(w.ledger.gem(kClipperAccount) == wad("10"));
    CHECK_FALSE(w.ledger.check_invariants());
  }

  TEST_CASE("bark error paths") {
    World w(params("0.001", "500"));
    CHECK(code_of([&] { w.clipper.bark(w.ledger, w.vault, kKeeper, 10); }) == Errc::SameTimestep);
    CHECK(code_of([&] { w.clipper.bark(w.ledger, VaultId{42}, kKeeper, 11); }) == Errc::UnknownVault);
    w.clipper.bark(w.ledger, w.vault, kKeeper, 11);
    CHECK(code_of([&] { w.clipper.bark(w.ledger, w.vault, kKeeper, 11); }) == Errc::NotUnsafe);

    World safe(params("0.001", "500"), kArt, "3000", "3000");
    CHECK(code_of([&] { safe.clipper.bark(safe.ledger, safe.vault, kKeeper, 11); }) == Errc::NotUnsafe);
  }

  TEST_CASE("redo restarts a stale auction at the current feed") {
    World w(params("0.001", "500"));
    AuctionId id = *w.clipper.bark(w.ledger, w.vault, kKeeper, 11).auction;
    CHECK(code_of([&] { w.clipper.redo(w.ledger, id, kKeeper, 12); }) == Errc::NotStale);
    w.ledger.poke(wad("2200"), 26);
    Rad before = w.ledger.dai(kKeeper);
    Rad paid = w.clipper.redo(w.ledger, id, kKeeper, 26);
    CHECK(paid == rad("517.142857142857142857142"));
    CHECK(w.ledger.dai(kKeeper) - before == paid);
    CHECK(w.clipper.auction(id).top == ray("2750"));
    CHECK(w.clipper.auction(id).tic == 26);
    CHECK_FALSE(w.clipper.stale(w.clipper.auction(id), 26));
    CHECK(code_of([&] { w.clipper.redo(w.ledger, AuctionId{9}, kKeeper, 26); }) == Errc::Closed);
  }

  TEST_CASE("take capped by tab returns leftover collateral") {
    // Feed 1600 with buf 1.25 gives a starting price of 2000.
    World w(params("0.001", "500"), kArt, "3000", "1600");
    AuctionId id = *w.clipper.bark(w.ledger, w.vault, kKeeper, 11).auction;
    w.ledger.suck(kKeeper, rad("20000"));
    Rad sin_before = w.ledger.sin();
    TakeResult r = w.clipper.take(w.ledger, id, kKeeper, wad("10"), 11);
    CHECK(r.slice == wad("8.571428571428571428"));
    CHECK(r.owe == rad("17142.857142857142856"));
    CHECK(r.owe == r.slice * ray("2000"));
    CHECK(r.closed);
    CHECK(w.ledger.gem(kOwner) == wad("1.428571428571428572"));
    CHECK(w.ledger.gem(kKeeper) == r.slice);
    CHECK(w.ledger.gem(kClipperAccount).is_zero());
    CHECK(sin_before - w.ledger.sin() == r.owe);
    CHECK(w.clipper.auctions().empty());
    CHECK_FALSE(w.ledger.check_invariants());
  }

  TEST_CASE("take of the whole lot when tab exceeds its value") {
    World w(params("0", "0"), "30000", "5000", "1600");
    AuctionId id = *w.clipper.bark(w.ledger, w.vault, kKeeper, 11).auction;
    w.ledger.suck(kKeeper, rad("25000"));
    Rad sin_before = w.ledger.sin();
    TakeResult r = w.clipper.take(w.ledger, id, kKeeper, wad("10"), 11);
    CHECK(r.slice == wad("10"));
    CHECK(r.owe == rad("20000"));
    CHECK(r.closed);
    CHECK(sin_before - w.ledger.sin() == rad("20000"));
    // The shortfall stays behind as sin next to the keeper's minted capital.
    CHECK(w.ledger.sin() - rad("25000") == rad("10000"));
    CHECK(w.ledger.dai(kKeeper) == rad("5000"));
    CHECK_FALSE(w.ledger.check_invariants());
  }

  TEST_CASE("take with zero quantity is a no-op") {
    World w(params("0.001", "500"), kArt, "3000", "1600");
    AuctionId id = *w.clipper.bark(w.ledger, w.vault, kKeeper, 11).auction;
    Rad dai = w.ledger.dai(kKeeper);
    TakeResult r = w.clipper.take(w.ledger, id, kKeeper, Wad{}, 11);
    CHECK(r.slice.is_zero());
    CHECK(r.owe.is_zero());
    CHECK_FALSE(r.closed);
    CHECK(w.ledger.dai(kKeeper) == dai);
    CHECK(w.clipper.auction(id).lot == wad("10"));
  }

  TEST_CASE("take error paths") {
    World w(params("0.001", "500"), kArt, "3000", "1600");
    AuctionId id = *w.clipper.bark(w.ledger, w.vault, kKeeper, 11).auction;
    CHECK(code_of([&] { w.clipper.take(w.ledger, id, kKeeper, wad("10"), 11); }) == Errc::InsufficientDai);
    CHECK(code_of([&] { w.clipper.take(w.ledger, id, kKeeper, wad("1"), 11, ray("1999")); }) ==
          Errc::TooExpensive);
    CHECK(code_of([&] { w.clipper.take(w.ledger, id, kKeeper, wad("1"), 26); }) == Errc::NeedsRedo);
    CHECK(code_of([&] { w.clipper.take(w.ledger, AuctionId{7}, kKeeper, wad("1"), 11); }) == Errc::Closed);
  }

  TEST_CASE("partial takes keep the auction open and conserve value") {
    World w(params("0.001", "500"), kArt, "3000", "1600");
    AuctionId id = *w.clipper.bark(w.ledger, w.vault, kKeeper, 11).auction;
    w.ledger.suck(kKeeper, rad("100000"));
    std::mt19937_64 rng(5);
    Timestep t = 11;
    Wad bought;
    Rad paid;
    while (!w.clipper.auctions().empty()) {
      const Auction a = w.clipper.auction(id);
      const Ray p = w.clipper.price(a, t);
      Wad qty = Wad::from_raw(Int(static_cast<long long>(rng() % 3000 + 1)) * pow10(15));
      TakeResult r = w.clipper.take(w.ledger, id, kKeeper, qty, t);
      CHECK(r.owe == r.slice * p);
      CHECK(r.slice <= qty);
      bought += r.slice;
      paid += r.owe;
      REQUIRE_FALSE(w.ledger.check_invariants());
      if (!r.closed) {
        CHECK(w.clipper.auction(id).lot == a.lot - r.slice);
        CHECK(w.clipper.auction(id).tab == a.tab - r.owe);
      }
      t += static_cast<Timestep>(rng() % 2);
    }
    CHECK(bought + w.ledger.gem(kOwner) == wad("10"));
    CHECK(paid <= rad(kArt));
  }
}
