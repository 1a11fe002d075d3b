#pragma once

#include <vector>

#include "contour.hpp"

namespace vp {

// orthogonal reflection across the line through z and w
struct Reflection {
    cplx z, w;
};

cplx reflect_point(const Reflection& s, cplx x);
// linear part of the reflection acting on a velocity
cplx reflect_vector(const Reflection& s, cplx v);
// reflected nodes in reversed order (so they stay counterclockwise) and flipped sign
Patch mirror_patch(const Patch& p, const Reflection& s);

struct GreenIdentityReport {
    double first = 0;     // max |G*(x,y) - G*(x,Sy) - G(x,y)|, x, y in D
    double second = 0;    // max |G*(x,y) - G*(x,Sy) + G(Sx,y)|, x in S(D), y in D
    double symmetry = 0;  // max |G*(Sx,Sy) - G*(x,y)|
    int pairs = 0;
    int skipped = 0;
};

// pairs drawn uniformly from D (rejection in the bounding box of its boundary), seeded
GreenIdentityReport green_identity_residual(const ConformalMap& d, const ConformalMap& dstar, const Reflection& s,
                                            int samples, unsigned seed = 1);

// Robin function of the sector {|z|<1, 0<arg z<pi/m} by the image sum over the dihedral group
double sector_robin_images(int m, cplx z);

struct PatchImage {
    int base = 0;                  // index into the base patches
    double sign = 1;               // sign relative to the base patch
    std::vector<int> reflections;  // applied in order
};

struct MultiPatchConfig {
    std::vector<Reflection> reflections;
    std::vector<PatchImage> members;  // the first members are the base patches themselves
    std::vector<Patch> patches;       // assembled patches, one per member
};

// each reflection appends the mirror of every current member
MultiPatchConfig duplicate(const std::vector<Patch>& base, const std::vector<Reflection>& reflections);
// rebuild the images from new base patches
std::vector<Patch> assemble(const MultiPatchConfig& cfg, const std::vector<Patch>& base);

// duplicate every frame of a base trajectory; cell, when given, must contain every base node
std::vector<MultiPatchConfig> duplicate_patches(const std::vector<PatchFrame>& base,
                                                const std::vector<Reflection>& reflections,
                                                const ConformalMap* cell = nullptr);

struct DuplicationCheck {
    double max_deviation = 0;
    std::vector<PatchFrame> frames;
};

// evolves the whole configuration in D* and compares the images with the reflected base patches
DuplicationCheck verify_duplicated_dynamics(const ConformalMap& dstar, const MultiPatchConfig& cfg, double dt,
                                            int steps, const EvolveOptions& opt = {});

// max |u(Sx) - S'(u(x))| over the points for a configuration antisymmetric under s
double velocity_equivariance(const ConformalMap& dstar, const std::vector<Patch>& patches, const Reflection& s,
                             const std::vector<cplx>& points);

}  // namespace vp
