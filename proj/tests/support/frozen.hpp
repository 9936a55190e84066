#pragma once

// Generated by tests/data/derive.py (mpmath, 40 digits).
namespace frozen {

inline constexpr double k_v_h2_01_02 = 0.3398369094541219371;
inline constexpr double k_v_h2_01_02_argpoint = -1.4142135623730950488;
inline constexpr double k_atan_sqrt2_over_4 = 0.3398369094541219371;
inline constexpr double k_v_h2_01_21 = 1.5707963267948966192;
inline constexpr double k_v_h2_13_m24 = 0.83308454186702422655;
inline constexpr double k_s_b2_05_0_0_03 = 0.38934122548172577368;
inline constexpr double k_v_b2_05_0_0_03 = 0.76350495777798588414;
inline constexpr double k_s_b2_m02_01_06_m03 = 0.57601431105258730451;
inline constexpr double k_v_b2_m02_01_06_m03 = 0.89109863861989403645;
inline constexpr double k_b1_pi3 = 0.07179676972449082589;
inline constexpr double k_b2_pi3 = 13.928203230275509174;
inline constexpr double k_f2_pi4_at_1 = 0.8284271247461900976;
inline constexpr double k_m1_pi4 = 2.4142135623730950488;
inline constexpr double k_f2_slope_b1_pi4 = 2.4142135623730950488;
inline constexpr double k_f2_slope_b2_pi4 = -0.4142135623730950488;
inline constexpr double k_s_ball_e1_half_inner = 0.33333333333333333333;
inline constexpr double k_j_e1_2e1 = 0.69314718055994530942;
inline constexpr double k_j_h_01_03 = 1.0986122886681096914;
inline constexpr double k_p_e1_e2 = 0.57735026918962576451;
inline constexpr double k_best_s_pi2 = 0.7071067811865475244;
inline constexpr double k_best_j_pi = 1.0986122886681096914;
inline constexpr double k_best_p_pi2 = 0.57735026918962576451;
inline constexpr double k_outer1_radius_pi4 = 2.8284271247461900976;
inline constexpr double k_outer2_radius_pi4 = 4.8284271247461900976;

}  // namespace frozen
