// Spoken feedback. Announcements are queued and spoken strictly in arrival
// order, one at a time, so fast tap bursts never produce overlapping audio.

export interface Speaker {
    speak(text: string, onEnd: () => void): void;
}

export class SpeechQueue {
    private queue: string[] = [];
    private speaking = false;

    constructor(private speaker: Speaker) {}

    enqueue(text: string): void {
        this.queue.push(text);
        this.pump();
    }

    get pendingCount(): number {
        return this.queue.length + (this.speaking ? 1 : 0);
    }

    private pump(): void {
        if (this.speaking) return;
        const next = this.queue.shift();
        if (next === undefined) return;
        this.speaking = true;
        this.speaker.speak(next, () => {
            this.speaking = false;
            this.pump();
        });
    }
}

/** Speaker backed by the browser's built-in synthesis. */
export function browserSpeaker(): Speaker {
    return {
        speak(text: string, onEnd: () => void): void {
            if (typeof window === "undefined" || !("speechSynthesis" in window)) {
                console.warn("speech synthesis unavailable:", text);
                onEnd();
                return;
            }
            const utterance = new SpeechSynthesisUtterance(text);
            utterance.rate = 1.1;
            utterance.onend = () => onEnd();
            utterance.onerror = () => onEnd();
            window.speechSynthesis.speak(utterance);
        },
    };
}
