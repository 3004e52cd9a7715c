// A live dialing session over one websocket. The buffer shown anywhere in
// the UI is only ever the server's last state message; no entry logic runs
// client-side.

import {
    FeedbackMessage,
    LayoutMessage,
    ProtocolError,
    ServerErrorMessage,
    StateMessage,
    TapMessage,
    parseServerMessage,
    serializeTap,
} from "./protocol.js";

export interface WebSocketLike {
    send(data: string): void;
    close(): void;
    onopen: (() => void) | null;
    onmessage: ((ev: { data: unknown }) => void) | null;
    onclose: (() => void) | null;
}

export interface SessionEvents {
    onLayout?(layout: LayoutMessage): void;
    onFeedback?(msg: FeedbackMessage): void;
    onState?(state: StateMessage): void;
    onServerError?(msg: ServerErrorMessage): void;
    onProtocolError?(err: ProtocolError): void;
    onDisconnect?(): void;
}

/** Wrap a clock so session timestamps never go backwards. */
export function makeMonotoneClock(now: () => number): () => number {
    let last = 0;
    return () => {
        const t = now();
        if (t > last) last = t;
        return last;
    };
}

export class DialSession {
    layout: LayoutMessage | null = null;
    state: StateMessage | null = null;
    private clock: () => number;

    constructor(
        private socket: WebSocketLike,
        private events: SessionEvents = {},
        now: () => number = () => performance.now(),
    ) {
        this.clock = makeMonotoneClock(now);
        socket.onmessage = (ev) => this.receive(String(ev.data));
        socket.onclose = () => this.events.onDisconnect?.();
    }

    /** Send a tap in layout screen units; returns the message for recording. */
    sendTap(x: number, y: number): TapMessage {
        const tap: TapMessage = { type: "tap", x, y, t: this.clock() };
        this.socket.send(serializeTap(tap));
        return tap;
    }

    close(): void {
        this.socket.close();
    }

    private receive(raw: string): void {
        let msg;
        try {
            msg = parseServerMessage(raw);
        } catch (err) {
            if (err instanceof ProtocolError) {
                this.events.onProtocolError?.(err);
                return;
            }
            throw err;
        }
        switch (msg.type) {
            case "layout":
                this.layout = msg;
                this.events.onLayout?.(msg);
                break;
            case "feedback":
                this.events.onFeedback?.(msg);
                break;
            case "state":
                this.state = msg;
                this.events.onState?.(msg);
                break;
            case "error":
                this.events.onServerError?.(msg);
                break;
        }
    }
}
