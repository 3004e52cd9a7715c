import { describe, expect, it } from "vitest";

import { normalizePoint } from "../src/surface.js";

const geometry = { width: 480, height: 800, handedness: "left_hold" };

describe("normalizePoint", () => {
    it("maps the surface rectangle onto layout screen units", () => {
        const rect = { left: 100, top: 50, width: 240, height: 400 };
        // the rect is half-scale, so client offsets double
        expect(normalizePoint(rect, 100, 50, geometry)).toEqual({ x: 0, y: 0 });
        expect(normalizePoint(rect, 340, 450, geometry)).toEqual({ x: 480, y: 800 });
        expect(normalizePoint(rect, 220, 250, geometry)).toEqual({ x: 240, y: 400 });
        const p = normalizePoint(rect, 119.2, 90, geometry);
        expect(p.x).toBeCloseTo(38.4, 10);
        expect(p.y).toBeCloseTo(80, 10);
    });

    it("clamps taps that land outside the rectangle", () => {
        const rect = { left: 0, top: 0, width: 480, height: 800 };
        expect(normalizePoint(rect, -25, 100, geometry)).toEqual({ x: 0, y: 100 });
        expect(normalizePoint(rect, 500, 900, geometry)).toEqual({ x: 480, y: 800 });
    });

    it("is exact at region centers regardless of the on-screen size", () => {
        for (const scale of [0.5, 1, 2.75]) {
            const rect = { left: 13, top: 7, width: 480 * scale, height: 800 * scale };
            const p = normalizePoint(rect, 13 + 240 * scale, 7 + 340 * scale, geometry);
            expect(p.x).toBeCloseTo(240, 8);
            expect(p.y).toBeCloseTo(340, 8);
        }
    });
});
