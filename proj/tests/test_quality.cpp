#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fastbf/quality.hpp"

using namespace fastbf;

namespace {

Image pattern(int w, int h, int (*f)(int, int)) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img(x, y) = f(x, y);
    return img;
}

int img1(int x, int y) { return (37 * x + 91 * y + 5 * ((x * y) % 17)) % 256; }
int img2(int x, int y) { return (img1(x, y) + 29 * ((x + 2 * y) % 7)) % 256; }
int grad(int x, int y) { return 20 + 4 * x + 3 * y + ((7 * x + 3 * y) % 11); }
int grad_inverted(int x, int y) { return 255 - grad(x, y); }
int grad_noisy(int x, int y) { return std::clamp(grad(x, y) + (5 * x) % 9 - 4, 0, 255); }

}  // namespace

// reference values from scikit-image structural_similarity with a gaussian window (sigma 1.5),
// population covariance and data_range 255
TEST(Ssim, MatchesReferenceImplementation) {
    EXPECT_NEAR(ssim(pattern(23, 19, img1), pattern(23, 19, img2)), 0.023173223785854485, 1e-12);
    EXPECT_NEAR(ssim(pattern(32, 24, grad), pattern(32, 24, grad_inverted)), -0.3498048191017225, 1e-12);
    EXPECT_NEAR(ssim(pattern(32, 24, grad), pattern(32, 24, grad_noisy)), 0.9674517407743397, 1e-12);
}

TEST(Ssim, IdenticalImagesScoreOne) {
    const Image a = pattern(20, 15, img1);
    EXPECT_DOUBLE_EQ(ssim(a, a), 1.0);
    EXPECT_DOUBLE_EQ(ssim(Image(12, 12, 0.0), Image(12, 12, 0.0)), 1.0);
}

TEST(Ssim, InvertedImageScoresLow) {
    const Image a = pattern(32, 24, grad);
    EXPECT_LT(ssim(a, pattern(32, 24, grad_inverted)), 0.2);
}

TEST(Ssim, Symmetric) {
    const Image a = pattern(23, 19, img1), b = pattern(23, 19, img2);
    EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-15);
}

TEST(Ssim, BrightnessShiftCostsLessThanInversion) {
    const Image a = pattern(32, 24, grad);
    Image shifted = a;
    for (double& v : shifted.samples()) v += 30.0;
    const double s = ssim(a, shifted);
    EXPECT_LT(s, 1.0);
    EXPECT_GT(s, ssim(a, pattern(32, 24, grad_inverted)));
}

TEST(Ssim, RejectsSmallOrMismatched) {
    EXPECT_THROW(ssim(Image(10, 30), Image(10, 30)), std::invalid_argument);
    EXPECT_THROW(ssim(Image(12, 12), Image(12, 13)), std::invalid_argument);
}

TEST(Psnr, KnownValues) {
    Image a(4, 4, 100.0), b(4, 4, 100.0);
    EXPECT_EQ(psnr(a, b), kPsnrCap);
    b(0, 0) = 104.0;  // mse = 1
    EXPECT_NEAR(psnr(a, b), 20.0 * std::log10(255.0), 1e-12);
    EXPECT_NEAR(psnr(Image(3, 3, 0.0), Image(3, 3, 255.0)), 0.0, 1e-12);
    Image c = a;
    c(1, 1) += 1e-5;
    EXPECT_LE(psnr(a, c), kPsnrCap);
    EXPECT_THROW(psnr(Image(2, 2), Image(2, 3)), std::invalid_argument);
}

TEST(Psnr, CompareImagesBundlesBoth) {
    const Image a = pattern(16, 16, grad), b = pattern(16, 16, grad_noisy);
    const auto r = compare_images(a, b);
    EXPECT_EQ(r.psnr, psnr(a, b));
    EXPECT_EQ(r.ssim, ssim(a, b));
}
