// Global self-check toggles. Test builds switch these on so every Groebner
// basis is re-verified against the Buchberger criterion and every Ritt
// reduction re-verifies its certificate identity.
#ifndef DIFFCHOW_SELFCHECK_HPP
#define DIFFCHOW_SELFCHECK_HPP

namespace diffchow {

struct SelfCheck {
  static bool& groebner() {
    static bool on = false;
    return on;
  }
  static bool& ritt() {
    static bool on = false;
    return on;
  }
  static void enable_all() { groebner() = ritt() = true; }
};

}  // namespace diffchow

#endif
