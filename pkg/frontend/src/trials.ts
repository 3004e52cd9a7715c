// Dialing trials: speak the presented number, record taps until the call
// key ends the session (or a timeout marks it abandoned), upload the trace
// for server-side scoring, and speak the resulting entry speed.

import { SpeechQueue } from "./speech.js";
import { StateMessage, TapMessage } from "./protocol.js";

export interface TrialScore {
    presented: string;
    transcribed: string;
    wpm: number;
    duration_seconds: number;
    error_count: number;
    correction_count: number;
    complete: boolean;
}

export interface TrialUpload {
    presented: string;
    technique: string;
    taps: { x: number; y: number; t: number }[];
}

export type TrialUploader = (body: TrialUpload) => Promise<TrialScore>;

const DIGIT_WORDS = [
    "zero", "one", "two", "three", "four",
    "five", "six", "seven", "eight", "nine",
];

export function speakableNumber(number: string): string {
    return number.split("").map((d) => DIGIT_WORDS[Number(d)] ?? d).join(" ");
}

export function speakableScore(score: TrialScore): string {
    if (!score.complete) {
        return `trial incomplete, ${score.error_count} errors`;
    }
    const speed = score.wpm.toFixed(1).replace(".", " point ");
    return `${speed} words per minute, ${score.error_count} errors`;
}

interface ActiveTrial {
    presented: string;
    technique: string;
    taps: TapMessage[];
    timer: ReturnType<typeof setTimeout> | null;
}

export class TrialRunner {
    private active: ActiveTrial | null = null;

    constructor(
        private speech: SpeechQueue,
        private upload: TrialUploader,
        private onScore: (score: TrialScore) => void = () => {},
        private timeoutMs: number = 60_000,
    ) {}

    get running(): boolean {
        return this.active !== null;
    }

    start(presented: string, technique: string): void {
        if (this.active) this.abandon();
        this.speech.enqueue(`dial ${speakableNumber(presented)}`);
        this.active = {
            presented,
            technique,
            taps: [],
            timer: this.timeoutMs > 0 ? setTimeout(() => this.abandon(), this.timeoutMs) : null,
        };
    }

    recordTap(tap: TapMessage): void {
        this.active?.taps.push(tap);
    }

    /** Feed every server state message through here; call ends the trial. */
    handleState(state: StateMessage): void {
        if (this.active && state.terminated) {
            void this.finish();
        }
    }

    /** Give up on the running trial; the trace still uploads as incomplete. */
    abandon(): void {
        if (this.active) void this.finish();
    }

    private async finish(): Promise<void> {
        const trial = this.active;
        if (!trial) return;
        this.active = null;
        if (trial.timer !== null) clearTimeout(trial.timer);
        try {
            const score = await this.upload({
                presented: trial.presented,
                technique: trial.technique,
                taps: trial.taps.map(({ x, y, t }) => ({ x, y, t })),
            });
            this.speech.enqueue(speakableScore(score));
            this.onScore(score);
        } catch (err) {
            this.speech.enqueue("trial upload failed");
            console.error("trial upload failed", err);
        }
    }
}

/** Uploader against the serve endpoint. */
export function httpUploader(baseUrl = ""): TrialUploader {
    return async (body: TrialUpload): Promise<TrialScore> => {
        const response = await fetch(`${baseUrl}/api/trials`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
        if (!response.ok) {
            throw new Error(`upload rejected: ${response.status}`);
        }
        const doc = await response.json();
        return { presented: body.presented, ...doc };
    };
}
