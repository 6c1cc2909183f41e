#include "wce/cyclotomic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace wce;

namespace {

Cyc random_cyc(std::mt19937_64& rng, unsigned n, unsigned nterms = 3) {
    Cyc acc = Cyc::rational(0, n);
    for (unsigned t = 0; t < nterms; ++t) {
        long long num = static_cast<long long>(rng() % 19) - 9;
        long long den = 1 + static_cast<long long>(rng() % 7);
        acc += Cyc::zeta(n, static_cast<long long>(rng() % n)).scaled(Rational(num, den));
    }
    return acc;
}

}  // namespace

TEST_CASE("rational and root-of-unity arithmetic") {
    REQUIRE(Cyc::rational(Rational(1, 2)) + Cyc::rational(Rational(1, 3)) ==
            Cyc::rational(Rational(5, 6)));
    REQUIRE(Cyc::zeta(2, 1) == Cyc(-1));
    REQUIRE(Cyc::zeta(6, 1) * Cyc::zeta(6, 2) == Cyc(-1));  // zeta_6^3 = -1
    REQUIRE(Cyc::zeta(6, 3) == Cyc(-1));
    Cyc i = Cyc::zeta(24, 6);
    REQUIRE(i * i == Cyc(-1));
}

TEST_CASE("(zeta_8 + zeta_8^7)^2 = 2") {
    Cyc r = Cyc::zeta(24, 3) + Cyc::zeta(24, 21);
    REQUIRE(r * r == Cyc(2));
    // float oracle
    auto f = (r * r).to_float();
    REQUIRE(std::abs(f.real() - 2.0) < 1e-12);
    REQUIRE(std::abs(f.imag()) < 1e-12);
}

TEST_CASE("square roots of integers") {
    Cyc s2 = sqrt_of_integer(2, 24);
    REQUIRE(s2 * s2 == Cyc(2));
    REQUIRE(s2.to_float().real() > 0);
    REQUIRE(sqrt_of_integer(1, 24) == Cyc(1));
    Cyc sm3 = sqrt_of_integer(-3, 24);
    REQUIRE(sm3 * sm3 == Cyc(-3));
    REQUIRE(sm3.to_float().imag() > 0);  // positive imaginary part
    // (2 zeta_3 + 1)^2 = -3: same element up to representation
    Cyc alt = Cyc::zeta(24, 8).scaled(Rational(2)) + Cyc(1);
    REQUIRE(alt == sm3);
    // products and square parts
    REQUIRE(sqrt_of_integer(2, 24) * sqrt_of_integer(3, 24) == sqrt_of_integer(6, 24));
    REQUIRE(sqrt_of_integer(18, 24) == sqrt_of_integer(2, 24).scaled(Rational(3)));
    REQUIRE(sqrt_of_integer(-1, 24) == Cyc::zeta(24, 6));
    // minimal conductor: sqrt(-3) already lives in Q(zeta_3)
    REQUIRE(sqrt_of_integer(-3, 3).promoted(24) == sm3);
}

TEST_CASE("missing square roots name the minimal conductor") {
    try {
        sqrt_of_integer(5, 24);
        FAIL("expected a domain_error");
    } catch (const std::domain_error& e) {
        REQUIRE(std::string(e.what()).find("divisible by 5") != std::string::npos);
    }
    try {
        sqrt_of_integer(-2, 3);
        FAIL("expected a domain_error");
    } catch (const std::domain_error& e) {
        REQUIRE(std::string(e.what()).find("divisible by 8") != std::string::npos);
    }
}

TEST_CASE("complex conjugation is the Galois map") {
    REQUIRE(Cyc::zeta(6, 1).conj() == Cyc::zeta(6, 5));
    REQUIRE(Cyc::rational(Rational(7, 3), 24).conj() == Cyc::rational(Rational(7, 3), 24));
    Cyc sm3 = sqrt_of_integer(-3, 24);
    REQUIRE(sm3.conj() == -sm3);
    Cyc s2 = sqrt_of_integer(2, 24);
    REQUIRE(s2.conj() == s2);  // real element
}

TEST_CASE("division by the extended Euclidean algorithm") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        Cyc a = random_cyc(rng, 24);
        if (a.is_zero()) continue;
        Cyc b = random_cyc(rng, 24);
        Cyc q = b / a;
        REQUIRE(q * a == b);
        REQUIRE(a * a.inverse() == Cyc::rational(1, 24));
    }
    REQUIRE_THROWS_AS(Cyc(1) / Cyc::rational(0, 24), std::domain_error);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 60; ++iter) {
        Cyc a = random_cyc(rng, 12), b = random_cyc(rng, 12), c = random_cyc(rng, 12);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + (b + c) == (a + b) + c);
        REQUIRE(a - a == Cyc::rational(0, 12));
    }
}

TEST_CASE("to_float is a ring homomorphism up to 1e-10") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 60; ++iter) {
        Cyc a = random_cyc(rng, 24), b = random_cyc(rng, 24);
        auto fa = a.to_float(), fb = b.to_float();
        REQUIRE(std::abs((a + b).to_float() - (fa + fb)) < 1e-10);
        REQUIRE(std::abs((a * b).to_float() - (fa * fb)) < 1e-10);
    }
    REQUIRE(std::abs(Cyc::rational(Rational(1, 2)).to_float().real() - 0.5) < 1e-15);
    REQUIRE(std::abs(Cyc::zeta(4, 1).to_float().imag() - 1.0) < 1e-12);
}

TEST_CASE("promotion to a larger conductor preserves arithmetic") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 40; ++iter) {
        Cyc a = random_cyc(rng, 8), b = random_cyc(rng, 8);
        REQUIRE((a * b).promoted(24) == a.promoted(24) * b.promoted(24));
        REQUIRE((a + b).promoted(24) == a.promoted(24) + b.promoted(24));
        // equality across conductors
        REQUIRE(a == a.promoted(24));
    }
    REQUIRE(Cyc::zeta(6, 1).promoted(24) == Cyc::zeta(24, 4));
}

TEST_CASE("canonical text serialization round-trips") {
    std::mt19937_64 rng(19);
    for (int iter = 0; iter < 40; ++iter) {
        Cyc a = random_cyc(rng, 24);
        REQUIRE(Cyc::from_string(a.to_string()) == a);
        REQUIRE(Cyc::from_string(a.to_string()).to_string() == a.to_string());
    }
    REQUIRE(Cyc::rational(0, 24).to_string() == "24;");
}
