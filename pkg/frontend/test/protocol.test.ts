import { describe, expect, it } from "vitest";

import {
    ProtocolError,
    parseServerMessage,
    serializeTap,
} from "../src/protocol.js";

const layoutDoc = {
    type: "layout",
    geometry: { width: 480, height: 800, handedness: "left_hold" },
    mode: "single",
    anchors: {
        index: [480, 200], middle: [480, 320], ring: [480, 440],
        little: [480, 560], thumb: [0, 360],
    },
    regions: [
        "above_index", "index", "middle", "ring", "little", "below_little",
        "above_thumb", "thumb", "below_thumb", "between_thumb_and_middle",
        "bottom_centre",
    ].map((id, i) => ({ id, center: [100 + i, 200 + i] })),
    keymap: { thumb: "digit:2" },
    parameters: { inset: 38.4, margin: 38.4, activation_radius: 54 },
};

describe("parseServerMessage", () => {
    it("parses a layout message", () => {
        const msg = parseServerMessage(JSON.stringify(layoutDoc));
        if (msg.type !== "layout") throw new Error("wrong type");
        expect(msg.regions).toHaveLength(11);
        expect(msg.geometry.width).toBe(480);
        expect(msg.keymap.thumb).toBe("digit:2");
        expect(msg.parameters.activation_radius).toBe(54);
    });

    it("parses feedback, state, and error messages", () => {
        const feedback = parseServerMessage(
            JSON.stringify({ type: "feedback", kind: "digit", utterance: "two", detail: "2" }),
        );
        expect(feedback).toEqual({ type: "feedback", kind: "digit", utterance: "two", detail: "2" });

        const state = parseServerMessage(
            JSON.stringify({
                type: "state",
                buffer: "12",
                pending: { region: "index", selected: 1, press_count: 1 },
                terminated: false,
            }),
        );
        if (state.type !== "state") throw new Error("wrong type");
        expect(state.pending?.selected).toBe(1);

        const error = parseServerMessage(JSON.stringify({ type: "error", error: "parse" }));
        expect(error.type).toBe("error");
    });

    it("accepts a null pending state", () => {
        const state = parseServerMessage(
            JSON.stringify({ type: "state", buffer: "", pending: null, terminated: true }),
        );
        if (state.type !== "state") throw new Error("wrong type");
        expect(state.pending).toBeNull();
        expect(state.terminated).toBe(true);
    });

    it("rejects malformed documents", () => {
        const bad = [
            "{nope",
            JSON.stringify({ buffer: "1" }),
            JSON.stringify({ type: "teleport" }),
            JSON.stringify({ type: "feedback", kind: "digit", utterance: "" }),
            JSON.stringify({ type: "feedback", kind: "song", utterance: "x", detail: "" }),
            JSON.stringify({ type: "state", buffer: 7, terminated: false }),
            JSON.stringify({ ...layoutDoc, regions: layoutDoc.regions.slice(0, 10) }),
            JSON.stringify({ ...layoutDoc, geometry: { width: "480" } }),
        ];
        for (const raw of bad) {
            expect(() => parseServerMessage(raw), raw).toThrow(ProtocolError);
        }
    });
});

describe("serializeTap", () => {
    it("emits one line of JSON with the domain fields", () => {
        const raw = serializeTap({ type: "tap", x: 38.4, y: 360, t: 1234.5 });
        expect(raw).not.toContain("\n");
        expect(JSON.parse(raw)).toEqual({ type: "tap", x: 38.4, y: 360, t: 1234.5 });
    });
});
