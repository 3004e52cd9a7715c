import { describe, expect, it, vi } from "vitest";

import { SpeechQueue } from "../src/speech.js";
import { StateMessage, TapMessage } from "../src/protocol.js";
import {
    TrialRunner,
    TrialScore,
    TrialUpload,
    speakableNumber,
    speakableScore,
} from "../src/trials.js";

function instantSpeech() {
    const spoken: string[] = [];
    const queue = new SpeechQueue({
        speak(text, onEnd) {
            spoken.push(text);
            onEnd();
        },
    });
    return { queue, spoken };
}

function tap(x: number, y: number, t: number): TapMessage {
    return { type: "tap", x, y, t };
}

const state = (buffer: string, terminated: boolean): StateMessage => ({
    type: "state",
    buffer,
    pending: null,
    terminated,
});

function score(partial: Partial<TrialScore> = {}): TrialScore {
    return {
        presented: "12",
        transcribed: "12",
        wpm: 3.6,
        duration_seconds: 4,
        error_count: 0,
        correction_count: 0,
        complete: true,
        ...partial,
    };
}

describe("speakable text", () => {
    it("spells the presented number digit by digit", () => {
        expect(speakableNumber("047")).toBe("zero four seven");
    });

    it("describes complete and incomplete results", () => {
        expect(speakableScore(score())).toBe("3 point 6 words per minute, 0 errors");
        expect(speakableScore(score({ complete: false, error_count: 2 }))).toBe(
            "trial incomplete, 2 errors",
        );
    });
});

describe("TrialRunner", () => {
    it("speaks the number, records taps, uploads on call, speaks the result", async () => {
        const { queue, spoken } = instantSpeech();
        const uploads: TrialUpload[] = [];
        const scores: TrialScore[] = [];
        const runner = new TrialRunner(
            queue,
            async (body) => {
                uploads.push(body);
                return score();
            },
            (s) => scores.push(s),
            0, // no timeout
        );

        runner.recordTap(tap(1, 1, 0)); // before any trial: ignored
        runner.start("12", "single");
        expect(spoken).toEqual(["dial one two"]);
        expect(runner.running).toBe(true);

        runner.recordTap(tap(38.4, 240, 100));
        runner.recordTap(tap(38.4, 360, 600));
        runner.recordTap(tap(240, 761.6, 1200));
        runner.handleState(state("1", false));
        runner.handleState(state("12", false));
        runner.handleState(state("12", true));
        await vi.waitFor(() => expect(scores).toHaveLength(1));

        expect(uploads).toEqual([
            {
                presented: "12",
                technique: "single",
                taps: [
                    { x: 38.4, y: 240, t: 100 },
                    { x: 38.4, y: 360, t: 600 },
                    { x: 240, y: 761.6, t: 1200 },
                ],
            },
        ]);
        expect(spoken).toEqual(["dial one two", "3 point 6 words per minute, 0 errors"]);
        expect(runner.running).toBe(false);
    });

    it("only terminating states end the trial", async () => {
        const { queue } = instantSpeech();
        const upload = vi.fn(async () => score());
        const runner = new TrialRunner(queue, upload, () => {}, 0);
        runner.start("1", "single");
        runner.handleState(state("", false));
        runner.handleState(state("1", false));
        expect(upload).not.toHaveBeenCalled();
        expect(runner.running).toBe(true);
        runner.handleState(state("1", true));
        await vi.waitFor(() => expect(upload).toHaveBeenCalledOnce());
    });

    it("marks an abandoned trial via its timeout", async () => {
        vi.useFakeTimers();
        try {
            const { queue, spoken } = instantSpeech();
            const uploads: TrialUpload[] = [];
            const runner = new TrialRunner(
                queue,
                async (body) => {
                    uploads.push(body);
                    return score({ complete: false, transcribed: "4", error_count: 1 });
                },
                () => {},
                5000,
            );
            runner.start("42", "double");
            runner.recordTap(tap(441.6, 200, 100));
            vi.advanceTimersByTime(5001);
            await vi.waitFor(() => expect(uploads).toHaveLength(1));
            expect(uploads[0].taps).toHaveLength(1);
            expect(runner.running).toBe(false);
            expect(spoken.at(-1)).toBe("trial incomplete, 1 errors");
        } finally {
            vi.useRealTimers();
        }
    });

    it("announces upload failures instead of a score", async () => {
        const { queue, spoken } = instantSpeech();
        const runner = new TrialRunner(
            queue,
            async () => {
                throw new Error("offline");
            },
            () => {},
            0,
        );
        runner.start("1", "single");
        runner.handleState(state("1", true));
        await vi.waitFor(() => expect(spoken.at(-1)).toBe("trial upload failed"));
    });
});
