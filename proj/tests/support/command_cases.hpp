#pragma once

// One representative invocation per command with its expected exit code.
// Fixture names are resolved against the fixture directory.

#include <string>
#include <vector>

namespace cases {

struct Invocation {
  std::vector<std::string> args;  // args[1] is a fixture file name, or empty
  int exit_code = 0;
};

inline const std::vector<Invocation>& invocations() {
  static const std::vector<Invocation> all{
      {{"validate", "walking_arrow"}, 0},
      {{"fixpoints", "codiscrete", "--functor", "F"}, 0},
      {{"strict", "hexagon", "--functor", "rot"}, 0},
      {{"fixcat-build", "codiscrete", "--functor", "F"}, 0},
      {{"transport", "s3", "--transformation", "eta"}, 0},
      {{"transport", "s3", "--from", "Id", "--to", "c12"}, 0},
      {{"homcolim", "walking_arrow", "--functor", "const0", "--object", "1"}, 0},
      {{"nerve", "hexagon", "--category", "hexagon", "--max-dim", "2"}, 0},
      {{"homology", "hexagon", "--category", "hexagon"}, 0},
      {{"lefschetz", "hexagon", "--functor", "rot"}, 0},
      {{"certify", "walking_arrow", "--functor", "const0", "--transformation", "eta"}, 0},
      {{"pullback", "lattice", "--category", "subsets(abc)", "--f", "{a,b}<={a,b,c}", "--g", "{b,c}<={a,b,c}"}, 0},
      {{"pushout", "lattice", "--category", "subsets(abc)", "--f", "{}<={a}", "--g", "{}<={b}"}, 0},
      {{"slice", "walking_arrow", "--category", "walking_arrow", "--object", "1"}, 0},
      {{"slice", "walking_arrow", "--category", "walking_arrow", "--object", "0", "--coslice"}, 0},
      {{"basechange", "lattice", "--category", "subsets(abc)", "--sigma", "{b}<={a,b,c}"}, 0},
      {{"basechange", "lattice", "--category", "subsets(abc)", "--sigma", "{a}<={a,b}", "--cobase"}, 0},
      {{"adjoint", "lattice", "--category", "subsets(abc)", "--sigma", "{b}<={a,b,c}"}, 0},
      {{"equiv", "codiscrete", "--functor", "F"}, 0},
      {{"equiv", "walking_arrow", "--functor", "const0"}, 1},
      {{"balanced", "walking_arrow", "--category", "walking_arrow"}, 1},
      {{"criterion", "codiscrete", "--functor", "F", "--object", "A", "--sigma", "A>B"}, 0},
      {{"site-check", "pseudocircle", "--site", "pseudocircle"}, 0},
      {{"sitemorph", "pseudocircle", "--site", "pseudocircle", "--functor", "sym"}, 0},
      {{"sitemorph", "pseudocircle", "--site", "pseudocircle", "--functor", "top"}, 1},
      {{"sitemorph", "xuvw", "--site", "xuvw", "--functor", "collapse"}, 1},
      {{"fix-site", "pseudocircle", "--site", "pseudocircle", "--functor", "sym"}, 0},
      {{"fix-additive", "z2_matrices", "--enrichment", "xor", "--functor", "Id"}, 0},
      {{"sheaf-check", "pseudocircle", "--presheaf", "comp"}, 0},
      {{"sheaf-check", "xuvw", "--presheaf", "gap"}, 1},
      {{"cech", "pseudocircle", "--site", "pseudocircle", "--cover", "UV", "--presheaf", "comp", "--max-degree", "2"}, 0},
      {{"flabby", "pseudocircle", "--presheaf", "comp"}, 1},
      {{"compare", "pseudocircle", "--presheaf", "comp", "--functor", "sym", "--cover", "UV"}, 0},
      {{"cofix", "pseudocircle", "--functor", "sym", "--object", "abc"}, 0},
      {{"exact", "xuvw", "--functor", "swap", "--first", "incl", "--second", "proj"}, 0},
      {{"proptest", "", "--suite", "snf", "--suite", "colimit", "--scale", "0.2"}, 0},
  };
  return all;
}

// Full argument vector with the fixture resolved and `extra` appended.
inline std::vector<std::string> resolve(const Invocation& inv, const std::string& fixture_dir,
                                        const std::vector<std::string>& extra) {
  std::vector<std::string> args{inv.args[0]};
  if (!inv.args[1].empty()) args.push_back(fixture_dir + "/" + inv.args[1] + ".fixcat.json");
  args.insert(args.end(), inv.args.begin() + 2, inv.args.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace cases
