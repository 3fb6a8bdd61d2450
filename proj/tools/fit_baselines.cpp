// pvq-fit-baselines: fits the sign+max two-level reconstruction profile for a
// range of dimensions and prints the table rows checked into
// include/pvq/baselines.hpp (default_sign_max_profile), together with the
// resulting MSE so refits are easy to compare.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pvq/pvq.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fit sign+max reconstruction profiles"};
  int l_min = 2;
  int l_max = 32;
  long long samples = 200000;
  std::uint64_t seed = 12345;
  std::string sampler = "cube";
  app.add_option("--l-min", l_min, "first dimension (default 2)");
  app.add_option("--l-max", l_max, "last dimension (default 32)");
  app.add_option("--samples", samples, "Monte Carlo samples (default 200000)");
  app.add_option("--seed", seed, "RNG seed (default 12345)");
  app.add_option("--sampler", sampler, "input law: cube (default) or sphere")
      ->check(CLI::IsMember({"cube", "sphere"}));
  CLI11_PARSE(app, argc, argv);

  const pvq::SampleLaw law = sampler == "sphere"
                                 ? pvq::SampleLaw::kSphereUniform
                                 : pvq::SampleLaw::kCubeDirection;
  char line[160];
  for (int l = l_min; l <= l_max; ++l) {
    const pvq::SignMaxProfile profile =
        pvq::fit_sign_max_profile(l, samples, seed, law);
    const double mse = pvq::sign_max_mse(l, profile, samples, seed, law);
    std::snprintf(line, sizeof(line), "      {%.12f, %.12f},  // l=%d  mse %.4f",
                  profile.w_max, profile.w_rest, l, mse);
    std::cout << line << '\n';
  }
  return 0;
}
